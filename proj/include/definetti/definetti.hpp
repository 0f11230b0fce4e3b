#pragma once

// Constructive finite de Finetti approximation for exchangeable laws.
//
// For X_1^n exchangeable and 1 <= k <= n-1 the mixing measure is the law of
// P(X_1 = . | X_{k+1}^{m*}), with m* chosen so that the summed conditional
// mutual informations sum_i I(X_1^{i-1}; X_i | X_{k+1}^{m*}) are minimal.
// certify() evaluates the resulting mixture and checks the chain
//
//   D(P_k || M) <= thm_bound <= cor_bound_H <= cor_bound_logA
//
// together with the Pinsker total-variation bound.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "definetti/exchangeable.hpp"
#include "definetti/info.hpp"

namespace definetti {

/// Default slack for every inequality checked by certify().
inline constexpr double kCertifyTol = 1e-9;

/// Values within this distance of the minimum count as ties in m* selection.
inline constexpr double kMStarTieTol = 1e-14;

struct MixingAtom {
    double weight;
    LetterDist component;
    TypeVector conditioning_type;  // type of X_{k+1}^{m*} this atom came from
};

struct MixingMeasure {
    int k = 0;
    int m_star = 0;
    std::vector<MixingAtom> atoms;

    int alphabet_size() const { return atoms.empty() ? 0 : atoms.front().component.alphabet_size(); }
};

struct Certificate {
    int alphabet_size = 0;
    int n = 0;
    int k = 0;
    int m_star = 0;
    Nats D;
    Nats m_star_value;  // sum_i I(X_1^{i-1}; X_i | X_{k+1}^{m*})
    Nats thm_bound;
    Nats cor_bound_H;
    Nats cor_bound_logA;
    double tv = 0.0;
    double pinsker_tv = 0.0;
    double df_tv_ref = 0.0;
    std::optional<double> first_bound;  // binary alphabets only
    double second_rate = 0.0;           // rate with constant 1, not a bound
    int atom_count = 0;
};

/// Thrown when a certified inequality fails beyond tolerance.
class CertificationFailure : public std::runtime_error {
public:
    CertificationFailure(const std::string& what, Certificate cert)
        : std::runtime_error(what), certificate_(std::move(cert)) {}
    const Certificate& certificate() const { return certificate_; }

private:
    Certificate certificate_;
};

/// I(X_1^{i-1}; X_k^n).
Nats tail_mi(const ExchangeableLaw& law, int i, int k);

/// sum_{i=1}^k I(X_1^{i-1}; X_i | X_{k+1}^m).
Nats cond_mi_sum(const ExchangeableLaw& law, int k, int m);

struct MStarSelection {
    int m_star;
    Nats value;
    std::vector<Nats> values;  // cond_mi_sum for m = k..n
};

/// Smallest argmin of cond_mi_sum over m in {k, ..., n}.
MStarSelection select_mstar(const ExchangeableLaw& law, int k);

MixingMeasure build_mixing_measure(const ExchangeableLaw& law, int k, int m_star);

/// Mixture of k-fold products, sum_j w_j Q_j^k, in dense form.
GenericJoint mixture_dist(const MixingMeasure& mu, int k);

/// Same mixture, per-sequence probability per type class.
ExchangeableLaw mixture_law(const MixingMeasure& mu, int k);

/// Run the full construction and check every bound; throws
/// CertificationFailure if any inequality is violated beyond tol.
Certificate certify(const ExchangeableLaw& law, int k, double tol = kCertifyTol);

/// Variant that also returns the constructed mixing measure.
struct CertifiedMixture {
    Certificate certificate;
    MixingMeasure mixing;
};
CertifiedMixture certify_with_mixture(const ExchangeableLaw& law, int k, double tol = kCertifyTol);

/// k(k-1) / (2(n-k+1)) * log m.
double corollary_log_bound(int n, int k, int alphabet_size);

/// 5 k^2 log n / (n-k): earlier bound for binary vectors.
double first_bound_formula(int n, int k);

/// k sqrt(5 log n / (2(n-k))): total-variation form of first_bound_formula.
double first_tv_bound_formula(int n, int k);

/// (k / sqrt(n))^{1/2} log(n/k), constant 1.
double second_rate_formula(int n, int k);

}  // namespace definetti
