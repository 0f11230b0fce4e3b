#include "definetti/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace definetti {

using nlohmann::json;

std::string format_real(double x) {
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    if (std::isnan(x)) throw std::invalid_argument("format_real: NaN");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void JsonWriter::newline() {
    if (!pretty_ || inline_depth_ > 0) return;
    out_ << '\n' << std::string(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
    if (after_key_) {
        after_key_ = false;
        return;
    }
    if (stack_.empty()) return;
    auto& f = stack_.back();
    if (!f.first) out_ << (pretty_ && inline_depth_ == 0 ? "," : (inline_depth_ > 0 ? ", " : ","));
    f.first = false;
    newline();
}

JsonWriter& JsonWriter::begin_object() {
    before_value();
    out_ << '{';
    stack_.push_back({true, true});
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    const bool empty = stack_.back().first;
    stack_.pop_back();
    if (!empty) newline();
    out_ << '}';
    if (stack_.empty() && pretty_) out_ << '\n';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    before_value();
    out_ << '[';
    stack_.push_back({true, false});
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    const bool empty = stack_.back().first;
    stack_.pop_back();
    if (!empty) newline();
    out_ << ']';
    if (stack_.empty() && pretty_) out_ << '\n';
    return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
    before_value();
    out_ << json(std::string(k)).dump() << ": ";
    after_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double x) {
    before_value();
    if (x == std::numeric_limits<double>::infinity())
        out_ << "\"inf\"";
    else
        out_ << format_real(x);
    return *this;
}

JsonWriter& JsonWriter::value(int x) {
    before_value();
    out_ << x;
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t x) {
    before_value();
    out_ << x;
    return *this;
}

JsonWriter& JsonWriter::value(bool x) {
    before_value();
    out_ << (x ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
    before_value();
    out_ << json(std::string(s)).dump();
    return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string_view(s)); }

JsonWriter& JsonWriter::null() {
    before_value();
    out_ << "null";
    return *this;
}

JsonWriter& JsonWriter::real_array(const std::vector<double>& xs) {
    begin_array();
    ++inline_depth_;
    for (double x : xs) value(x);
    --inline_depth_;
    stack_.pop_back();
    out_ << ']';
    return *this;
}

JsonWriter& JsonWriter::int_array(const std::vector<int>& xs) {
    begin_array();
    ++inline_depth_;
    for (int x : xs) value(x);
    --inline_depth_;
    stack_.pop_back();
    out_ << ']';
    return *this;
}

void write_law(JsonWriter& j, const ExchangeableLaw& law) {
    j.begin_object();
    j.key("alphabet_size").value(law.alphabet_size());
    j.key("n").value(law.n());
    j.key("type_probs").begin_array();
    for (std::size_t t = 0; t < law.space().size(); ++t) {
        if (law.seq_prob(t) <= 0.0) continue;
        j.begin_object();
        j.key("counts").int_array(law.space()[t].counts);
        j.key("seq_prob").value(law.seq_prob(t));
        j.end_object();
    }
    j.end_array();
    j.end_object();
}

void write_law(std::ostream& out, const ExchangeableLaw& law) {
    JsonWriter j(out);
    write_law(j, law);
}

namespace {

double json_real(const json& v) {
    if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw std::invalid_argument("expected a number");
    return v.get<double>();
}

ExchangeableLaw law_from_json(const json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("law file: expected a JSON object");
    const int m = doc.at("alphabet_size").get<int>();
    const int n = doc.at("n").get<int>();
    if (m < 1) throw std::invalid_argument("law file: alphabet_size must be >= 1");
    if (n < 0) throw std::invalid_argument("law file: n must be >= 0");
    const TypeSpace space(m, n);
    std::vector<double> q(space.size(), 0.0);
    std::vector<bool> seen(space.size(), false);
    for (const auto& entry : doc.at("type_probs")) {
        const auto counts = entry.at("counts").get<std::vector<int>>();
        if (static_cast<int>(counts.size()) != m) throw std::invalid_argument("law file: counts has wrong length");
        int total = 0;
        for (int c : counts) {
            if (c < 0) throw std::invalid_argument("law file: negative count");
            total += c;
        }
        if (total != n) throw std::invalid_argument("law file: counts do not sum to n");
        const std::size_t idx = space.index_of(counts);
        if (seen[idx]) throw std::invalid_argument("law file: duplicate type");
        seen[idx] = true;
        const double p = json_real(entry.at("seq_prob"));
        if (!(p >= 0.0) || std::isinf(p)) throw std::invalid_argument("law file: invalid seq_prob");
        q[idx] = p;
    }
    return ExchangeableLaw(m, n, std::move(q), kLawFileTol);
}

}  // namespace

ExchangeableLaw parse_law(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("law file: ") + e.what());
    }
    try {
        return law_from_json(doc);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("law file: ") + e.what());
    }
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ExchangeableLaw load_law(const std::string& path) { return parse_law(read_file(path)); }

void save_law(const std::string& path, const ExchangeableLaw& law) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    write_law(out, law);
}

GeneratorSpec parse_generator_spec(std::string_view text) {
    try {
        const json doc = json::parse(text);
        GeneratorSpec spec;
        spec.kind = doc.at("kind").get<std::string>();
        spec.n = doc.value("n", 0);
        if (doc.contains("components")) spec.components = doc.at("components").get<std::vector<std::vector<double>>>();
        if (doc.contains("weights")) spec.weights = doc.at("weights").get<std::vector<double>>();
        if (doc.contains("counts")) spec.counts = doc.at("counts").get<std::vector<int>>();
        spec.alphabet_size = doc.value("alphabet_size", 0);
        spec.concentration = doc.value("concentration", 1.0);
        if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
        return spec;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("generator spec: ") + e.what());
    }
}

namespace {

double in_units(Nats x, Units units) { return units == Units::bits ? x.bits() : x.value(); }

}  // namespace

std::string certificate_csv_row(const Certificate& c, Units units) {
    std::ostringstream os;
    os << c.n << ',' << c.k << ',' << c.m_star << ',' << format_real(in_units(c.D, units)) << ','
       << format_real(in_units(c.thm_bound, units)) << ',' << format_real(in_units(c.cor_bound_H, units)) << ','
       << format_real(in_units(c.cor_bound_logA, units)) << ',' << format_real(c.tv) << ','
       << format_real(c.pinsker_tv) << ',' << format_real(c.df_tv_ref) << ','
       << (c.first_bound ? format_real(in_units(Nats(*c.first_bound), units)) : std::string()) << ','
       << format_real(c.second_rate) << ',' << c.atom_count;
    return os.str();
}

void write_certificate(JsonWriter& j, const Certificate& c, Units units) {
    j.begin_object();
    j.key("alphabet_size").value(c.alphabet_size);
    j.key("n").value(c.n);
    j.key("k").value(c.k);
    j.key("m_star").value(c.m_star);
    j.key("units").value(units == Units::bits ? "bits" : "nats");
    j.key("D").value(in_units(c.D, units));
    j.key("m_star_value").value(in_units(c.m_star_value, units));
    j.key("thm_bound").value(in_units(c.thm_bound, units));
    j.key("cor_bound_H").value(in_units(c.cor_bound_H, units));
    j.key("cor_bound_logA").value(in_units(c.cor_bound_logA, units));
    j.key("tv").value(c.tv);
    j.key("pinsker_tv").value(c.pinsker_tv);
    j.key("df_tv_ref").value(c.df_tv_ref);
    j.key("first_bound");
    if (c.first_bound)
        j.value(in_units(Nats(*c.first_bound), units));
    else
        j.null();
    j.key("second_rate").value(c.second_rate);
    j.key("second_rate_kind").value("rate-only");
    j.key("atom_count").value(c.atom_count);
    j.end_object();
}

namespace {

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        cells.emplace_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string canonical_cell(const std::string& cell) {
    if (cell.empty() || cell == "inf") return cell;
    // Integers stay as written; reals are re-formatted.
    if (cell.find_first_of(".eE") == std::string::npos) return cell;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) throw std::invalid_argument("csv: bad number '" + cell + "'");
    return format_real(v);
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        if (first) {
            table.header = std::string(line);
            first = false;
        } else {
            table.rows.push_back(split_line(line));
        }
    }
    return table;
}

std::string write_csv(const CsvTable& table) {
    std::string out = table.header + "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += canonical_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_fit_result(JsonWriter& j, const FitResult& fit) {
    j.begin_object();
    j.key("D").value(fit.D.value());
    j.key("iterations").value(fit.iterations);
    j.key("converged").value(fit.converged);
    j.key("weights").real_array(fit.weights);
    j.key("trace").real_array(fit.trace);
    j.end_object();
}

void write_mixing_measure(JsonWriter& j, const MixingMeasure& mu) {
    j.begin_object();
    j.key("k").value(mu.k);
    j.key("m_star").value(mu.m_star);
    j.key("atoms").begin_array();
    for (const auto& atom : mu.atoms) {
        j.begin_object();
        j.key("weight").value(atom.weight);
        j.key("component").real_array(atom.component.probs());
        j.key("conditioning_type").int_array(atom.conditioning_type.counts);
        j.end_object();
    }
    j.end_array();
    j.end_object();
}

void write_search_report(JsonWriter& j, const SearchResult& r, int restarts, int steps) {
    j.begin_object();
    j.key("seed").value(r.seed);
    j.key("restarts").value(restarts);
    j.key("steps").value(steps);
    j.key("k").value(r.k);
    j.key("best_ratio").value(r.best_ratio);
    j.key("best_restart").value(r.best_restart);
    j.key("restart_ratios").real_array(r.restart_ratios);
    j.key("note").value("lower bound on the worst-case ratio D / cor_bound_logA");
    j.key("best_law");
    write_law(j, r.best_law);
    j.end_object();
}

}  // namespace definetti
