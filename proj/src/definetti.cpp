#include "definetti/definetti.hpp"

#include <cmath>
#include <sstream>

#include "definetti/numeric.hpp"

namespace definetti {

namespace {

void check_k(const ExchangeableLaw& law, int k) {
    if (k < 1 || k > law.n() - 1) {
        std::ostringstream os;
        os << "k must satisfy 1 <= k <= n-1 (got k=" << k << ", n=" << law.n() << ")";
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

Nats tail_mi(const ExchangeableLaw& law, int i, int k) {
    if (i < 1 || i > k || k > law.n() - 1) throw std::invalid_argument("tail_mi: need 1 <= i <= k <= n-1");
    if (i == 1) return Nats(0.0);
    return mutual_information(block_joint(law, i - 1, law.n() - k + 1));
}

Nats cond_mi_sum(const ExchangeableLaw& law, int k, int m) {
    if (k < 1 || m < k || m > law.n()) throw std::invalid_argument("cond_mi_sum: need 1 <= k <= m <= n");
    CompensatedSum s;
    for (int i = 1; i <= k; ++i) s += conditional_mutual_information(law, i, m - k).value();
    return Nats(s.value());
}

MStarSelection select_mstar(const ExchangeableLaw& law, int k) {
    check_k(law, k);
    MStarSelection out{k, Nats(0.0), {}};
    for (int m = k; m <= law.n(); ++m) out.values.push_back(cond_mi_sum(law, k, m));
    Nats best = out.values.front();
    for (const Nats& v : out.values) best = std::min(best, v);
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        if (out.values[j].value() <= best.value() + kMStarTieTol) {
            out.m_star = k + static_cast<int>(j);
            out.value = out.values[j];
            break;
        }
    }
    return out;
}

MixingMeasure build_mixing_measure(const ExchangeableLaw& law, int k, int m_star) {
    if (k < 1 || m_star < k || m_star > law.n())
        throw std::invalid_argument("build_mixing_measure: need 1 <= k <= m* <= n");
    const int m = law.alphabet_size();
    const int c = m_star - k;
    const ExchangeableLaw cond_marg = marginal(law, c);
    const TypeSpace cond_space(m, c);
    MixingMeasure mu{k, m_star, {}};
    CompensatedSum total;
    for (std::size_t w = 0; w < cond_space.size(); ++w) {
        const double weight = cond_space.mult(w) * cond_marg.seq_prob(w);
        if (weight <= 0.0) continue;
        mu.atoms.push_back({weight, conditional_component(law, cond_space[w]), cond_space[w]});
        total += weight;
    }
    const double z = total.value();
    for (auto& atom : mu.atoms) atom.weight /= z;
    return mu;
}

ExchangeableLaw mixture_law(const MixingMeasure& mu, int k) {
    if (mu.atoms.empty()) throw std::invalid_argument("mixture: empty mixing measure");
    const int m = mu.alphabet_size();
    const TypeSpace space(m, k);
    std::vector<double> q(space.size());
    for (std::size_t t = 0; t < space.size(); ++t) {
        CompensatedSum s;
        for (const auto& atom : mu.atoms) {
            double prod = atom.weight;
            for (int a = 0; a < m; ++a)
                prod *= std::pow(atom.component[static_cast<std::size_t>(a)], space[t].counts[static_cast<std::size_t>(a)]);
            s += prod;
        }
        q[t] = s.value();
    }
    return ExchangeableLaw(m, k, std::move(q), 1e-9);
}

GenericJoint mixture_dist(const MixingMeasure& mu, int k) {
    if (mu.atoms.empty()) throw std::invalid_argument("mixture: empty mixing measure");
    const int m = mu.alphabet_size();
    const std::size_t size = dense_size(m, k);
    std::vector<double> prob(size);
    std::vector<int> seq(static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < size; ++idx) {
        std::size_t rest = idx;
        for (int t = k - 1; t >= 0; --t) {
            seq[static_cast<std::size_t>(t)] = static_cast<int>(rest % static_cast<std::size_t>(m));
            rest /= static_cast<std::size_t>(m);
        }
        CompensatedSum s;
        for (const auto& atom : mu.atoms) {
            double prod = atom.weight;
            for (int x : seq) prod *= atom.component[static_cast<std::size_t>(x)];
            s += prod;
        }
        prob[idx] = s.value();
    }
    return GenericJoint(m, k, std::move(prob), 1e-9);
}

double corollary_log_bound(int n, int k, int alphabet_size) {
    return static_cast<double>(k) * (k - 1) / (2.0 * (n - k + 1)) * std::log(static_cast<double>(alphabet_size));
}

double first_bound_formula(int n, int k) {
    return 5.0 * k * k * std::log(static_cast<double>(n)) / (n - k);
}

double first_tv_bound_formula(int n, int k) {
    return k * std::sqrt(5.0 * std::log(static_cast<double>(n)) / (2.0 * (n - k)));
}

double second_rate_formula(int n, int k) {
    return std::sqrt(k / std::sqrt(static_cast<double>(n))) * std::log(static_cast<double>(n) / k);
}

CertifiedMixture certify_with_mixture(const ExchangeableLaw& law, int k, double tol) {
    check_k(law, k);
    const int n = law.n();
    const int m = law.alphabet_size();

    const MStarSelection sel = select_mstar(law, k);
    MixingMeasure mu = build_mixing_measure(law, k, sel.m_star);
    const GenericJoint target = densify(marginal(law, k));
    const GenericJoint mix = mixture_dist(mu, k);

    CompensatedSum tail_sum;
    for (int i = 1; i <= k; ++i) tail_sum += tail_mi(law, i, k).value();

    const double scale = static_cast<double>(k) * (k - 1) / (2.0 * (n - k + 1));
    const ExchangeableLaw first = marginal(law, 1);

    Certificate c;
    c.alphabet_size = m;
    c.n = n;
    c.k = k;
    c.m_star = sel.m_star;
    c.m_star_value = sel.value;
    c.D = relative_entropy(target, mix);
    c.thm_bound = Nats(tail_sum.value() / (n - k + 1));
    c.cor_bound_H = Nats(scale * entropy(first).value());
    c.cor_bound_logA = Nats(corollary_log_bound(n, k, m));
    c.tv = total_variation(target, mix);
    c.pinsker_tv = std::sqrt(c.thm_bound.value() / 2.0);
    c.df_tv_ref = static_cast<double>(k) * (k - 1) / (2.0 * n);
    if (m == 2) c.first_bound = first_bound_formula(n, k);
    c.second_rate = second_rate_formula(n, k);
    c.atom_count = static_cast<int>(mu.atoms.size());

    auto require = [&](bool ok, const char* what, double lhs, double rhs) {
        if (ok) return;
        std::ostringstream os;
        os.precision(17);
        os << "certification failure: " << what << " (" << lhs << " > " << rhs << " + " << tol
           << ") for n=" << n << ", k=" << k << ", m*=" << c.m_star;
        throw CertificationFailure(os.str(), c);
    };
    require(c.D.value() <= c.m_star_value.value() + tol, "D <= sum of conditional MI at m*",
            c.D.value(), c.m_star_value.value());
    require(c.m_star_value.value() <= c.thm_bound.value() + tol, "value at m* <= average",
            c.m_star_value.value(), c.thm_bound.value());
    require(c.D.value() <= c.thm_bound.value() + tol, "D <= thm_bound", c.D.value(), c.thm_bound.value());
    require(c.thm_bound.value() <= c.cor_bound_H.value() + tol, "thm_bound <= cor_bound_H",
            c.thm_bound.value(), c.cor_bound_H.value());
    require(c.cor_bound_H.value() <= c.cor_bound_logA.value() + tol, "cor_bound_H <= cor_bound_logA",
            c.cor_bound_H.value(), c.cor_bound_logA.value());
    require(c.tv <= c.pinsker_tv + tol, "tv <= pinsker_tv", c.tv, c.pinsker_tv);

    return {std::move(c), std::move(mu)};
}

Certificate certify(const ExchangeableLaw& law, int k, double tol) {
    return certify_with_mixture(law, k, tol).certificate;
}

}  // namespace definetti
