// Python bindings for the core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "definetti/definetti.hpp"
#include "definetti/generators.hpp"
#include "definetti/info.hpp"
#include "definetti/io.hpp"
#include "definetti/optimizer.hpp"

namespace py = pybind11;
using namespace definetti;

namespace {

py::dict certificate_dict(const Certificate& c) {
    py::dict d;
    d["alphabet_size"] = c.alphabet_size;
    d["n"] = c.n;
    d["k"] = c.k;
    d["m_star"] = c.m_star;
    d["D"] = c.D.value();
    d["m_star_value"] = c.m_star_value.value();
    d["thm_bound"] = c.thm_bound.value();
    d["cor_bound_H"] = c.cor_bound_H.value();
    d["cor_bound_logA"] = c.cor_bound_logA.value();
    d["tv"] = c.tv;
    d["pinsker_tv"] = c.pinsker_tv;
    d["df_tv_ref"] = c.df_tv_ref;
    d["first_bound"] = c.first_bound ? py::object(py::float_(*c.first_bound)) : py::object(py::none());
    d["second_rate"] = c.second_rate;
    d["atom_count"] = c.atom_count;
    return d;
}

py::dict fit_dict(const FitResult& f) {
    py::dict d;
    d["weights"] = f.weights;
    d["D"] = f.D.value();
    d["iterations"] = f.iterations;
    d["trace"] = f.trace;
    d["converged"] = f.converged;
    return d;
}

py::list mixing_list(const MixingMeasure& mu) {
    py::list atoms;
    for (const auto& a : mu.atoms) {
        py::dict d;
        d["weight"] = a.weight;
        d["component"] = a.component.probs();
        d["conditioning_type"] = a.conditioning_type.counts;
        atoms.append(d);
    }
    return atoms;
}

std::vector<std::vector<int>> type_list(const TypeSpace& s) {
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < s.size(); ++i) out.push_back(s[i].counts);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact finite de Finetti certificates for exchangeable laws on finite alphabets";

    py::register_exception<CertificationFailure>(m, "CertificationFailure", PyExc_RuntimeError);

    py::class_<ExchangeableLaw>(m, "Law")
        .def(py::init([](int alphabet_size, int n, std::vector<double> seq_probs) {
                 return ExchangeableLaw(alphabet_size, n, std::move(seq_probs), kLawFileTol);
             }),
             py::arg("alphabet_size"), py::arg("n"), py::arg("seq_probs"))
        .def_property_readonly("alphabet_size", &ExchangeableLaw::alphabet_size)
        .def_property_readonly("n", &ExchangeableLaw::n)
        .def_property_readonly("types", [](const ExchangeableLaw& l) { return type_list(l.space()); })
        .def_property_readonly("seq_probs", &ExchangeableLaw::seq_probs)
        .def_property_readonly("class_masses",
                               [](const ExchangeableLaw& l) {
                                   std::vector<double> out;
                                   for (std::size_t t = 0; t < l.space().size(); ++t) out.push_back(l.class_mass(t));
                                   return out;
                               })
        .def("seq_prob", [](const ExchangeableLaw& l, const std::vector<int>& counts) { return l.seq_prob(TypeVector(counts)); })
        .def("dense", [](const ExchangeableLaw& l) { return densify(l).probs(); },
             "Per-sequence probabilities, x_1 most significant.")
        .def("marginal", [](const ExchangeableLaw& l, int k) { return marginal(l, k); }, py::arg("k"))
        .def("to_json",
             [](const ExchangeableLaw& l) {
                 std::ostringstream out;
                 write_law(out, l);
                 return out.str();
             })
        .def_static("from_json", [](const std::string& text) { return parse_law(text); })
        .def_static("load", &load_law)
        .def("save", [](const ExchangeableLaw& l, const std::string& path) { save_law(path, l); })
        .def("__repr__", [](const ExchangeableLaw& l) {
            return "Law(alphabet_size=" + std::to_string(l.alphabet_size()) + ", n=" + std::to_string(l.n()) + ")";
        });

    // Generators.
    m.def("iid", [](const std::vector<double>& q, int n) { return iid(LetterDist(q), n); }, py::arg("q"), py::arg("n"));
    m.def(
        "iid_mixture",
        [](const std::vector<double>& weights, const std::vector<std::vector<double>>& components, int n) {
            if (weights.size() != components.size()) throw std::invalid_argument("one weight per component required");
            std::vector<MixtureComponent> comps;
            for (std::size_t j = 0; j < weights.size(); ++j) comps.push_back({weights[j], LetterDist(components[j])});
            return iid_mixture(comps, n);
        },
        py::arg("weights"), py::arg("components"), py::arg("n"));
    m.def("polya", &polya, py::arg("counts"), py::arg("n"));
    m.def("urn", &urn_without_replacement, py::arg("counts"), py::arg("n"));
    m.def("diaconis_pair", &diaconis_pair);
    m.def(
        "random_dirichlet",
        [](std::uint64_t seed, int alphabet_size, int n, double concentration) {
            return random_dirichlet(seed, alphabet_size, n, concentration);
        },
        py::arg("seed"), py::arg("alphabet_size"), py::arg("n"), py::arg("concentration") = 1.0);

    // Information measures.
    m.def("entropy", [](const std::vector<double>& p) { return entropy(p).value(); });
    m.def("relative_entropy", [](const std::vector<double>& p, const std::vector<double>& q) {
        if (p.size() != q.size()) throw std::invalid_argument("relative_entropy: size mismatch");
        return relative_entropy(p, q).value();
    });
    m.def("total_variation", [](const std::vector<double>& p, const std::vector<double>& q) {
        if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
        return total_variation(p, q);
    });
    m.def(
        "mutual_information",
        [](const ExchangeableLaw& l, int a, int b) { return mutual_information(block_joint(l, a, b)).value(); },
        py::arg("law"), py::arg("a"), py::arg("b"), "I between two disjoint blocks of lengths a and b.");
    m.def(
        "conditional_mutual_information",
        [](const ExchangeableLaw& l, int i, int cond_len) { return conditional_mutual_information(l, i, cond_len).value(); },
        py::arg("law"), py::arg("i"), py::arg("cond_len"));
    m.def("tail_mi", [](const ExchangeableLaw& l, int i, int k) { return tail_mi(l, i, k).value(); }, py::arg("law"),
          py::arg("i"), py::arg("k"));
    m.def("cond_mi_sum", [](const ExchangeableLaw& l, int k, int mm) { return cond_mi_sum(l, k, mm).value(); },
          py::arg("law"), py::arg("k"), py::arg("m"));
    m.def(
        "select_mstar",
        [](const ExchangeableLaw& l, int k) {
            const auto s = select_mstar(l, k);
            std::vector<double> values;
            for (const auto& v : s.values) values.push_back(v.value());
            return py::make_tuple(s.m_star, s.value.value(), values);
        },
        py::arg("law"), py::arg("k"));

    // Certification.
    m.def("certify", [](const ExchangeableLaw& l, int k) { return certificate_dict(certify(l, k)); }, py::arg("law"),
          py::arg("k"));
    m.def(
        "mixing_measure",
        [](const ExchangeableLaw& l, int k) {
            const auto cm = certify_with_mixture(l, k);
            py::dict d;
            d["k"] = cm.mixing.k;
            d["m_star"] = cm.mixing.m_star;
            d["atoms"] = mixing_list(cm.mixing);
            d["mixture"] = mixture_dist(cm.mixing, k).probs();
            return d;
        },
        py::arg("law"), py::arg("k"));

    // Optimizer.
    m.def(
        "fit_mixture_weights",
        [](const std::vector<double>& target, int alphabet_size, const std::vector<std::vector<double>>& components,
           int max_iter, double tol) {
            if (alphabet_size < 2) throw std::invalid_argument("fit_mixture_weights: alphabet size must be >= 2");
            int length = 0;
            for (std::size_t s = 1; s < target.size(); s *= static_cast<std::size_t>(alphabet_size)) ++length;
            std::vector<LetterDist> comps;
            for (const auto& c : components) comps.emplace_back(c);
            FitOptions opt;
            opt.max_iter = max_iter;
            opt.tol = tol;
            return fit_dict(fit_mixture_weights(GenericJoint(alphabet_size, length, target), comps, opt));
        },
        py::arg("target"), py::arg("alphabet_size"), py::arg("components"), py::arg("max_iter") = 100000,
        py::arg("tol") = 1e-12);
    m.def(
        "component_grid",
        [](int alphabet_size, int resolution) {
            std::vector<std::vector<double>> out;
            for (const auto& c : component_grid(alphabet_size, resolution)) out.push_back(c.probs());
            return out;
        },
        py::arg("alphabet_size"), py::arg("resolution"));
    m.def(
        "improve_certificate",
        [](const ExchangeableLaw& l, int k, int grid_resolution, bool constructed_only, int max_iter, double tol) {
            ImproveOptions opt;
            opt.grid_resolution = grid_resolution;
            opt.constructed_only = constructed_only;
            opt.fit.max_iter = max_iter;
            opt.fit.tol = tol;
            const auto r = improve_certificate(l, k, opt);
            py::dict d;
            d["certificate"] = certificate_dict(r.certificate);
            d["fit"] = fit_dict(r.fit);
            d["component_count"] = r.components.size();
            return d;
        },
        py::arg("law"), py::arg("k"), py::arg("grid_resolution") = 20, py::arg("constructed_only") = false,
        py::arg("max_iter") = 100000, py::arg("tol") = 1e-12);
    m.def(
        "adversarial_search",
        [](int alphabet_size, int n, int k, std::uint64_t seed, int restarts, int steps, int threads) {
            SearchOptions opt;
            opt.restarts = restarts;
            opt.steps = steps;
            opt.threads = threads;
            SearchResult r = [&] {
                py::gil_scoped_release release;
                return adversarial_search(alphabet_size, n, k, seed, opt);
            }();
            py::dict d;
            d["best_law"] = r.best_law;
            d["best_ratio"] = r.best_ratio;
            d["best_restart"] = r.best_restart;
            d["restart_ratios"] = r.restart_ratios;
            d["seed"] = r.seed;
            d["k"] = r.k;
            return d;
        },
        py::arg("alphabet_size"), py::arg("n"), py::arg("k"), py::arg("seed") = 0, py::arg("restarts") = 10,
        py::arg("steps") = 200, py::arg("threads") = 1);
    m.def("certificate_ratio", &certificate_ratio, py::arg("law"), py::arg("k"));
}
