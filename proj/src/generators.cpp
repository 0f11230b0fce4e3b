#include "definetti/generators.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "definetti/numeric.hpp"

namespace definetti {

ExchangeableLaw iid(const LetterDist& q, int n) { return iid_mixture({{1.0, q}}, n); }

ExchangeableLaw iid_mixture(const std::vector<MixtureComponent>& components, int n) {
    if (components.empty()) throw std::invalid_argument("iid_mixture: no components");
    const int m = components.front().dist.alphabet_size();
    CompensatedSum wsum;
    for (const auto& c : components) {
        if (c.dist.alphabet_size() != m) throw std::invalid_argument("iid_mixture: alphabet sizes differ");
        if (!(c.weight >= 0.0)) throw std::invalid_argument("iid_mixture: negative weight");
        wsum += c.weight;
    }
    if (std::abs(wsum.value() - 1.0) > 1e-9) throw std::invalid_argument("iid_mixture: weights must sum to 1");

    const TypeSpace space(m, n);
    std::vector<double> q(space.size());
    for (std::size_t t = 0; t < space.size(); ++t) {
        CompensatedSum s;
        for (const auto& c : components) {
            double prod = c.weight;
            for (int a = 0; a < m; ++a) prod *= std::pow(c.dist[static_cast<std::size_t>(a)], space[t].counts[static_cast<std::size_t>(a)]);
            s += prod;
        }
        q[t] = s.value();
    }
    return ExchangeableLaw(m, n, std::move(q));
}

ExchangeableLaw polya(const std::vector<int>& initial_counts, int n) {
    if (initial_counts.empty()) throw std::invalid_argument("polya: empty counts");
    for (int c : initial_counts)
        if (c <= 0) throw std::invalid_argument("polya: counts must be positive");
    if (n < 0) throw std::invalid_argument("polya: n must be >= 0");
    const int m = static_cast<int>(initial_counts.size());
    const double total = std::accumulate(initial_counts.begin(), initial_counts.end(), 0.0);
    double denom = 1.0;
    for (int t = 0; t < n; ++t) denom *= total + t;

    const TypeSpace space(m, n);
    std::vector<double> q(space.size());
    for (std::size_t t = 0; t < space.size(); ++t) {
        double num = 1.0;
        for (int a = 0; a < m; ++a) {
            const double c = initial_counts[static_cast<std::size_t>(a)];
            for (int j = 0; j < space[t].counts[static_cast<std::size_t>(a)]; ++j) num *= c + j;
        }
        q[t] = num / denom;
    }
    return ExchangeableLaw(m, n, std::move(q));
}

ExchangeableLaw urn_without_replacement(const std::vector<int>& counts, int n) {
    if (counts.empty()) throw std::invalid_argument("urn: empty counts");
    for (int c : counts)
        if (c < 0) throw std::invalid_argument("urn: counts must be nonnegative");
    const int total = std::accumulate(counts.begin(), counts.end(), 0);
    if (n < 0 || n > total) throw std::range_error("urn: n exceeds the number of balls");
    const int m = static_cast<int>(counts.size());
    double denom = 1.0;
    for (int t = 0; t < n; ++t) denom *= total - t;

    const TypeSpace space(m, n);
    std::vector<double> q(space.size());
    for (std::size_t t = 0; t < space.size(); ++t) {
        double num = 1.0;
        for (int a = 0; a < m; ++a) {
            const int c = counts[static_cast<std::size_t>(a)];
            for (int j = 0; j < space[t].counts[static_cast<std::size_t>(a)]; ++j) num *= c - j;
        }
        q[t] = std::max(0.0, num) / denom;
    }
    return ExchangeableLaw(m, n, std::move(q));
}

ExchangeableLaw diaconis_pair() { return urn_without_replacement({1, 1}, 2); }

PortableRng::PortableRng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
}

double PortableRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double PortableRng::uniform_open() {
    double u;
    do {
        u = uniform();
    } while (u == 0.0);
    return u;
}

double PortableRng::normal() {
    // Marsaglia polar method; the spare variate is discarded.
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    return u * std::sqrt(-2.0 * std::log(s) / s);
}

double PortableRng::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be positive");
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform_open(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::uint64_t PortableRng::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

ExchangeableLaw random_dirichlet(PortableRng& rng, int alphabet_size, int n, double concentration) {
    if (!(concentration > 0.0)) throw std::invalid_argument("random_dirichlet: concentration must be positive");
    const TypeSpace space(alphabet_size, n);
    std::vector<double> g(space.size());
    CompensatedSum total;
    for (double& x : g) {
        x = rng.gamma(concentration);
        total += x;
    }
    const double z = total.value();
    for (std::size_t t = 0; t < space.size(); ++t) g[t] = g[t] / z / space.mult(t);
    return ExchangeableLaw(alphabet_size, n, std::move(g));
}

ExchangeableLaw random_dirichlet(std::uint64_t seed, int alphabet_size, int n, double concentration) {
    PortableRng rng(seed);
    return random_dirichlet(rng, alphabet_size, n, concentration);
}

namespace {

LetterDist letter(const std::vector<double>& p) { return LetterDist(p, 1e-9); }

}  // namespace

ExchangeableLaw generate(const GeneratorSpec& spec) {
    const auto& kind = spec.kind;
    if (kind == "diaconis_pair") {
        if (spec.n != 0 && spec.n != 2) throw std::invalid_argument("diaconis_pair has n = 2");
        return diaconis_pair();
    }
    if (spec.n < 1) throw std::invalid_argument("generator: n must be >= 1");
    if (kind == "iid") {
        if (spec.components.size() != 1) throw std::invalid_argument("iid: exactly one component required");
        return iid(letter(spec.components.front()), spec.n);
    }
    if (kind == "iid_mixture") {
        if (spec.components.empty()) throw std::invalid_argument("iid_mixture: components required");
        std::vector<double> w = spec.weights;
        if (w.empty()) w.assign(spec.components.size(), 1.0 / static_cast<double>(spec.components.size()));
        if (w.size() != spec.components.size())
            throw std::invalid_argument("iid_mixture: one weight per component required");
        std::vector<MixtureComponent> comps;
        for (std::size_t j = 0; j < w.size(); ++j) comps.push_back({w[j], letter(spec.components[j])});
        return iid_mixture(comps, spec.n);
    }
    if (kind == "polya") return polya(spec.counts, spec.n);
    if (kind == "urn") return urn_without_replacement(spec.counts, spec.n);
    if (kind == "random_dirichlet") {
        if (!spec.seed) throw std::invalid_argument("random_dirichlet: seed is mandatory");
        if (spec.alphabet_size < 1) throw std::invalid_argument("random_dirichlet: alphabet size required");
        return random_dirichlet(*spec.seed, spec.alphabet_size, spec.n, spec.concentration);
    }
    throw std::invalid_argument("unknown generator kind '" + kind + "'");
}

}  // namespace definetti
