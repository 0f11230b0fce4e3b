// definetti: exact finite de Finetti certificates from the command line.
//
// Exit codes: 0 success, 1 certification failure (a proven bound was
// violated beyond tolerance), 2 invalid input or usage.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "definetti/definetti.hpp"
#include "definetti/generators.hpp"
#include "definetti/io.hpp"
#include "definetti/optimizer.hpp"
#include "definetti/parallel.hpp"

namespace {

using namespace definetti;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GeneratorFlags {
    std::string kind;
    std::string spec_path;
    int n = 0;
    std::string counts;
    std::string components;
    std::string weights;
    int alphabet_size = 0;
    double concentration = 1.0;
    std::optional<std::uint64_t> seed;
};

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad number '" + item + "'");
        }
    }
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad integer '" + item + "'");
        }
    }
    return out;
}

/// "a:b" or "a" as an inclusive integer range.
std::pair<int, int> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            const int v = std::stoi(s);
            return {v, v};
        }
        return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw UsageError("bad range '" + s + "' (expected a or a:b)");
    }
}

void add_generator_flags(CLI::App* cmd, GeneratorFlags& g) {
    cmd->add_option("--kind", g.kind, "iid | iid_mixture | polya | urn | diaconis_pair | random_dirichlet");
    cmd->add_option("--spec", g.spec_path, "generator spec JSON file");
    cmd->add_option("--counts", g.counts, "comma-separated counts (polya, urn)");
    cmd->add_option("--components", g.components,
                    "letter laws separated by ';', entries by ',' (iid, iid_mixture)");
    cmd->add_option("--weights", g.weights, "comma-separated mixture weights");
    cmd->add_option("--alphabet-size", g.alphabet_size, "alphabet size (random_dirichlet)");
    cmd->add_option("--concentration", g.concentration, "Dirichlet concentration (random_dirichlet)");
    cmd->add_option("--seed", g.seed, "PRNG seed (random_dirichlet)");
}

GeneratorSpec spec_from_flags(const GeneratorFlags& g, int n) {
    GeneratorSpec spec;
    if (!g.spec_path.empty()) {
        std::ifstream in(g.spec_path);
        if (!in) throw UsageError("cannot open '" + g.spec_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        spec = parse_generator_spec(ss.str());
    }
    if (!g.kind.empty()) spec.kind = g.kind;
    if (spec.kind.empty()) throw UsageError("a generator --kind or --spec is required");
    if (n > 0) spec.n = n;
    if (!g.counts.empty()) spec.counts = parse_ints(g.counts);
    if (!g.components.empty()) {
        spec.components.clear();
        std::stringstream ss(g.components);
        std::string part;
        while (std::getline(ss, part, ';')) spec.components.push_back(parse_reals(part));
    }
    if (!g.weights.empty()) spec.weights = parse_reals(g.weights);
    if (g.alphabet_size > 0) spec.alphabet_size = g.alphabet_size;
    if (g.concentration != 1.0 || spec.concentration <= 0.0) spec.concentration = g.concentration;
    if (g.seed) spec.seed = g.seed;
    return spec;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + out_path + "'");
    out << text;
}

std::string certificate_text(const Certificate& c, const std::string& format, Units units) {
    std::ostringstream os;
    if (format == "csv") {
        os << kCertificateCsvHeader << '\n' << certificate_csv_row(c, units) << '\n';
    } else {
        JsonWriter j(os);
        write_certificate(j, c, units);
    }
    return os.str();
}

ExchangeableLaw require_law(const std::string& path) {
    if (path.empty()) throw UsageError("--law is required");
    return load_law(path);
}

struct Row {
    std::string name;
    std::string kind;
    double value;
    std::optional<bool> holds;
    bool in_nats;
};

std::string compare_text(const Certificate& c, const std::string& format, Units units) {
    const double d = c.D.value();
    std::vector<Row> rows = {
        {"D", "relative_entropy", d, std::nullopt, true},
        {"thm_bound", "relative_entropy", c.thm_bound.value(), d <= c.thm_bound.value() + kCertifyTol, true},
        {"cor_bound_H", "relative_entropy", c.cor_bound_H.value(), d <= c.cor_bound_H.value() + kCertifyTol, true},
        {"cor_bound_logA", "relative_entropy", c.cor_bound_logA.value(), d <= c.cor_bound_logA.value() + kCertifyTol, true},
    };
    if (c.first_bound)
        rows.push_back({"first_bound", "relative_entropy", *c.first_bound, d <= *c.first_bound + kCertifyTol, true});
    rows.push_back({"second_rate", "rate_only", c.second_rate, std::nullopt, false});
    rows.push_back({"tv", "total_variation", c.tv, std::nullopt, false});
    rows.push_back({"pinsker_tv", "total_variation", c.pinsker_tv, c.tv <= c.pinsker_tv + kCertifyTol, false});
    rows.push_back({"df_tv_ref", "total_variation_reference", c.df_tv_ref, std::nullopt, false});
    if (c.alphabet_size == 2) {
        const double first_tv = first_tv_bound_formula(c.n, c.k);
        rows.push_back({"first_tv_bound", "total_variation", first_tv, c.tv <= first_tv + kCertifyTol, false});
    }
    auto shown = [&](const Row& r) { return r.in_nats && units == Units::bits ? Nats(r.value).bits() : r.value; };

    std::ostringstream os;
    if (format == "csv") {
        os << "quantity,kind,value,holds\n";
        for (const auto& r : rows)
            os << r.name << ',' << r.kind << ',' << format_real(shown(r)) << ','
               << (r.holds ? (*r.holds ? "true" : "false") : "") << '\n';
        return os.str();
    }
    JsonWriter j(os);
    j.begin_object();
    j.key("certificate");
    write_certificate(j, c, units);
    j.key("comparison").begin_array();
    for (const auto& r : rows) {
        j.begin_object();
        j.key("quantity").value(r.name);
        j.key("kind").value(r.kind);
        j.key("value").value(shown(r));
        j.key("holds");
        if (r.holds)
            j.value(*r.holds);
        else
            j.null();
        j.end_object();
    }
    j.end_array();
    j.end_object();
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Exact finite de Finetti certificates for exchangeable laws on finite alphabets"};
    app.require_subcommand(1);

    GeneratorFlags gen;
    int n = 0;
    int k = 0;
    std::string law_path;
    std::string out_path;
    std::string format;
    bool bits = false;
    int grid_resolution = 20;
    bool constructed_only = false;
    int max_iter = 100000;
    double tol = 1e-12;
    int restarts = 10;
    int steps = 200;
    std::uint64_t search_seed = 0;
    int alphabet_size = 2;
    std::string n_range;
    std::string k_range;

    auto* generate_cmd = app.add_subcommand("generate", "write an exchangeable law file");
    add_generator_flags(generate_cmd, gen);
    generate_cmd->add_option("--n", n, "sequence length");
    generate_cmd->add_option("-o,--out", out_path, "output path (default: stdout)");

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--bits", bits, "display information quantities in bits");
        cmd->add_option("-o,--out", out_path, "output path (default: stdout)");
    };

    auto* certify_cmd = app.add_subcommand("certify", "certify the de Finetti bounds for one law and k");
    certify_cmd->add_option("--law", law_path, "law file")->required();
    certify_cmd->add_option("--k", k, "prefix length, 1 <= k <= n-1")->required();
    add_format(certify_cmd);

    auto* compare_cmd = app.add_subcommand("compare", "certificate with all comparison bounds side by side");
    compare_cmd->add_option("--law", law_path, "law file")->required();
    compare_cmd->add_option("--k", k, "prefix length, 1 <= k <= n-1")->required();
    add_format(compare_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "certificates over a grid of (n, k)");
    sweep_cmd->add_option("--law", law_path, "law file (rows use its n-marginals)");
    add_generator_flags(sweep_cmd, gen);
    sweep_cmd->add_option("--n", n_range, "n range a:b")->required();
    sweep_cmd->add_option("--k", k_range, "k range a:b")->required();
    add_format(sweep_cmd);

    auto* optimize_cmd = app.add_subcommand("optimize", "re-weight the constructed mixture over a component grid");
    optimize_cmd->add_option("--law", law_path, "law file")->required();
    optimize_cmd->add_option("--k", k, "prefix length, 1 <= k <= n-1")->required();
    optimize_cmd->add_option("--grid-resolution", grid_resolution, "grid step 1/resolution")->check(CLI::PositiveNumber);
    optimize_cmd->add_flag("--constructed-only", constructed_only, "use only the constructed atoms as components");
    optimize_cmd->add_option("--max-iter", max_iter, "EM iteration cap");
    optimize_cmd->add_option("--tol", tol, "stop when D decreases by less than this");
    optimize_cmd->add_option("-o,--out", out_path, "output path (default: stdout)");
    optimize_cmd->add_flag("--bits", bits, "display information quantities in bits");

    auto* search_cmd = app.add_subcommand("search", "random-restart search for laws with a loose certificate");
    search_cmd->add_option("--alphabet-size", alphabet_size, "alphabet size");
    search_cmd->add_option("--n", n, "sequence length")->required();
    search_cmd->add_option("--k", k, "prefix length, 2 <= k <= n-1")->required();
    search_cmd->add_option("--seed", search_seed, "PRNG seed");
    search_cmd->add_option("--restarts", restarts, "number of restarts");
    search_cmd->add_option("--steps", steps, "coordinate steps per restart");
    search_cmd->add_option("-o,--out", out_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    // sweep defaults to CSV; the other commands to JSON.
    if (format.empty()) format = sweep_cmd->parsed() ? "csv" : "json";
    const Units units = bits ? Units::bits : Units::nats;

    if (generate_cmd->parsed()) {
        const ExchangeableLaw law = generate(spec_from_flags(gen, n));
        std::ostringstream os;
        write_law(os, law);
        emit(out_path, os.str());
        return 0;
    }
    if (certify_cmd->parsed()) {
        const ExchangeableLaw law = require_law(law_path);
        emit(out_path, certificate_text(certify(law, k), format, units));
        return 0;
    }
    if (compare_cmd->parsed()) {
        const ExchangeableLaw law = require_law(law_path);
        emit(out_path, compare_text(certify(law, k), format, units));
        return 0;
    }
    if (sweep_cmd->parsed()) {
        const auto [n_lo, n_hi] = parse_range(n_range);
        const auto [k_lo, k_hi] = parse_range(k_range);
        if (n_lo > n_hi || k_lo > k_hi) throw UsageError("empty range");
        std::optional<ExchangeableLaw> source;
        if (!law_path.empty()) {
            source = load_law(law_path);
            if (n_hi > source->n()) throw UsageError("n range exceeds the law's length");
        }
        std::vector<std::pair<int, int>> cells;
        for (int nn = n_lo; nn <= n_hi; ++nn)
            for (int kk = std::max(1, k_lo); kk <= std::min(k_hi, nn - 1); ++kk) cells.emplace_back(nn, kk);
        if (cells.empty()) throw UsageError("no (n, k) cell satisfies 1 <= k <= n-1");

        std::vector<std::optional<ExchangeableLaw>> laws(static_cast<std::size_t>(n_hi - n_lo + 1));
        for (int nn = n_lo; nn <= n_hi; ++nn) {
            if (cells.end() == std::find_if(cells.begin(), cells.end(), [&](auto c) { return c.first == nn; })) continue;
            laws[static_cast<std::size_t>(nn - n_lo)] =
                source ? marginal(*source, nn) : generate(spec_from_flags(gen, nn));
        }
        std::vector<std::optional<Certificate>> certs(cells.size());
        parallel_for(cells.size(), thread_count(), [&](std::size_t i) {
            const auto [nn, kk] = cells[i];
            certs[i] = certify(*laws[static_cast<std::size_t>(nn - n_lo)], kk);
        });

        std::ostringstream os;
        if (format == "csv") {
            os << kCertificateCsvHeader << '\n';
            for (const auto& c : certs) os << certificate_csv_row(*c, units) << '\n';
        } else {
            JsonWriter j(os);
            j.begin_array();
            for (const auto& c : certs) write_certificate(j, *c, units);
            j.end_array();
        }
        emit(out_path, os.str());
        return 0;
    }
    if (optimize_cmd->parsed()) {
        const ExchangeableLaw law = require_law(law_path);
        ImproveOptions opts;
        opts.grid_resolution = grid_resolution;
        opts.constructed_only = constructed_only;
        opts.fit.max_iter = max_iter;
        opts.fit.tol = tol;
        const auto result = improve_certificate(law, k, opts);
        std::ostringstream os;
        JsonWriter j(os);
        j.begin_object();
        j.key("certificate");
        write_certificate(j, result.certificate, units);
        j.key("constructed_mixing_measure");
        write_mixing_measure(j, result.constructed);
        j.key("grid_resolution").value(constructed_only ? 0 : grid_resolution);
        j.key("component_count").value(static_cast<int>(result.components.size()));
        j.key("D_constructed").value(units == Units::bits ? result.certificate.D.bits() : result.certificate.D.value());
        j.key("D_fit").value(units == Units::bits ? result.fit.D.bits() : result.fit.D.value());
        j.key("fit");
        write_fit_result(j, result.fit);
        j.end_object();
        emit(out_path, os.str());
        return 0;
    }
    if (search_cmd->parsed()) {
        SearchOptions opts;
        opts.restarts = restarts;
        opts.steps = steps;
        opts.threads = thread_count();
        const auto result = adversarial_search(alphabet_size, n, k, search_seed, opts);
        std::ostringstream os;
        JsonWriter j(os);
        write_search_report(j, result, restarts, steps);
        emit(out_path, os.str());
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const definetti::CertificationFailure& e) {
        std::cerr << "definetti: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "definetti: " << e.what() << '\n';
        return 2;
    }
}
