#include "definetti/info.hpp"

#include <cmath>
#include <stdexcept>

#include "definetti/numeric.hpp"

namespace definetti {

double Nats::bits() const { return v_ / std::log(2.0); }

Nats entropy(std::span<const double> p) {
    CompensatedSum s;
    for (double x : p)
        if (x > 0.0) s += -x * std::log(x);
    return Nats(std::max(0.0, s.value()));
}

Nats entropy(const LetterDist& d) { return entropy(d.probs()); }

Nats entropy(const ExchangeableLaw& law) {
    CompensatedSum s;
    for (std::size_t i = 0; i < law.space().size(); ++i) {
        const double q = law.seq_prob(i);
        if (q > 0.0) s += -law.space().mult(i) * q * std::log(q);
    }
    return Nats(std::max(0.0, s.value()));
}

Nats relative_entropy(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("relative_entropy: index sets differ");
    CompensatedSum s;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (p[x] > 0.0) {
            if (q[x] == 0.0) return Nats::infinity();
            s += p[x] * std::log(p[x] / q[x]);
        }
    }
    return Nats(std::max(0.0, s.value()));
}

Nats relative_entropy(const GenericJoint& p, const GenericJoint& q) {
    if (p.alphabet_size() != q.alphabet_size() || p.length() != q.length())
        throw std::invalid_argument("relative_entropy: joints on different spaces");
    return relative_entropy(p.probs(), q.probs());
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: index sets differ");
    CompensatedSum s;
    for (std::size_t x = 0; x < p.size(); ++x) s += std::abs(p[x] - q[x]);
    return 0.5 * s.value();
}

double total_variation(const GenericJoint& p, const GenericJoint& q) {
    if (p.alphabet_size() != q.alphabet_size() || p.length() != q.length())
        throw std::invalid_argument("total_variation: joints on different spaces");
    return total_variation(p.probs(), q.probs());
}

Nats mutual_information(const BlockJoint& bj) {
    const auto pa = bj.first_marginal();
    const auto pb = bj.second_marginal();
    CompensatedSum s;
    for (std::size_t i = 0; i < bj.first().size(); ++i) {
        for (std::size_t j = 0; j < bj.second().size(); ++j) {
            const double p = bj(i, j);
            if (p <= 0.0) continue;
            s += bj.first().mult(i) * bj.second().mult(j) * p * std::log(p / (pa[i] * pb[j]));
        }
    }
    return Nats(std::max(0.0, s.value()));
}

Nats conditional_mutual_information(const ExchangeableLaw& law, int i, int cond_len) {
    if (i < 1 || cond_len < 0 || i + cond_len > law.n())
        throw std::invalid_argument("conditional_mutual_information: need i + c <= n");
    if (i == 1) return Nats(0.0);
    const int m = law.alphabet_size();
    const ExchangeableLaw cond_marg = marginal(law, cond_len);
    const TypeSpace cond_space(m, cond_len);
    CompensatedSum s;
    for (std::size_t w = 0; w < cond_space.size(); ++w) {
        const double weight = cond_space.mult(w) * cond_marg.seq_prob(w);
        if (weight <= 0.0) continue;
        const ExchangeableLaw inner = conditional_law(law, i, cond_space[w]);
        s += weight * mutual_information(block_joint(inner, i - 1, 1)).value();
    }
    return Nats(std::max(0.0, s.value()));
}

namespace {

// Dense marginal of the first `len` coordinates.
std::vector<double> prefix_marginal(const GenericJoint& joint, int len) {
    const std::size_t stride = dense_size(joint.alphabet_size(), joint.length() - len);
    std::vector<double> out(joint.size() / stride, 0.0);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) out[idx / stride] += joint[idx];
    return out;
}

// Dense marginal of the single coordinate t (0-based).
std::vector<double> coordinate_marginal(const GenericJoint& joint, int t) {
    const auto m = static_cast<std::size_t>(joint.alphabet_size());
    const std::size_t stride = dense_size(joint.alphabet_size(), joint.length() - t - 1);
    std::vector<double> out(m, 0.0);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) out[(idx / stride) % m] += joint[idx];
    return out;
}

}  // namespace

Lemma1Result lemma1_decomposition(const GenericJoint& joint) {
    const int L = joint.length();
    const auto m = static_cast<std::size_t>(joint.alphabet_size());
    std::vector<std::vector<double>> singles;
    for (int t = 0; t < L; ++t) singles.push_back(coordinate_marginal(joint, t));

    std::vector<double> product(joint.size());
    for (std::size_t idx = 0; idx < joint.size(); ++idx) {
        double v = 1.0;
        std::size_t rest = idx;
        for (int t = L - 1; t >= 0; --t) {
            v *= singles[static_cast<std::size_t>(t)][rest % m];
            rest /= m;
        }
        product[idx] = v;
    }

    Lemma1Result out{relative_entropy(joint.probs(), product), {}};
    for (int i = 1; i <= L; ++i) {
        if (i == 1) {
            out.terms.emplace_back(0.0);
            continue;
        }
        // I(Z_1^{i-1}; Z_i) from the dense law of Z_1^i.
        const auto pi = prefix_marginal(joint, i);
        const auto prev = prefix_marginal(joint, i - 1);
        const auto& last = singles[static_cast<std::size_t>(i - 1)];
        CompensatedSum s;
        for (std::size_t idx = 0; idx < pi.size(); ++idx) {
            if (pi[idx] <= 0.0) continue;
            s += pi[idx] * std::log(pi[idx] / (prev[idx / m] * last[idx % m]));
        }
        out.terms.emplace_back(std::max(0.0, s.value()));
    }
    return out;
}

Lemma2Result lemma2_check(const ExchangeableLaw& law, int i, int k) {
    const int n = law.n();
    if (i < 1 || i > k || k > n - 1) throw std::invalid_argument("lemma2_check: need 1 <= i <= k <= n-1");
    Nats lhs(0.0);
    for (int mm = k; mm <= n; ++mm) lhs += conditional_mutual_information(law, i, mm - k);
    const Nats rhs = mutual_information(block_joint(law, i - 1, n - k + 1));
    return {lhs, rhs};
}

}  // namespace definetti
