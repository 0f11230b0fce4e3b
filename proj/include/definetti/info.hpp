#pragma once

// Entropy, relative entropy, total variation and (conditional) mutual
// information in nats, for finite distributions and exchangeable block laws.

#include <compare>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "definetti/exchangeable.hpp"

namespace definetti {

/// Information quantity in natural-log units; +inf is a legitimate value.
class Nats {
public:
    constexpr Nats() = default;
    constexpr explicit Nats(double v) : v_(v) {}

    static constexpr Nats infinity() { return Nats(std::numeric_limits<double>::infinity()); }

    constexpr double value() const { return v_; }
    bool is_infinite() const { return v_ == std::numeric_limits<double>::infinity(); }
    double bits() const;

    friend constexpr Nats operator+(Nats a, Nats b) { return Nats(a.v_ + b.v_); }
    Nats& operator+=(Nats o) {
        v_ += o.v_;
        return *this;
    }
    friend constexpr Nats operator*(double s, Nats a) { return Nats(s * a.v_); }
    friend constexpr auto operator<=>(Nats, Nats) = default;

private:
    double v_ = 0.0;
};

Nats entropy(std::span<const double> p);
Nats entropy(const LetterDist& d);
Nats entropy(const ExchangeableLaw& law);

/// D(P||Q); +inf iff P(x) > 0 = Q(x) for some x.
Nats relative_entropy(std::span<const double> p, std::span<const double> q);
Nats relative_entropy(const GenericJoint& p, const GenericJoint& q);

double total_variation(std::span<const double> p, std::span<const double> q);
double total_variation(const GenericJoint& p, const GenericJoint& q);

Nats mutual_information(const BlockJoint& bj);

/// I(X_1^{i-1}; X_i | Z) where Z is a disjoint block of length cond_len.
Nats conditional_mutual_information(const ExchangeableLaw& law, int i, int cond_len);

struct Lemma1Result {
    Nats divergence;           // D(P_{Z_1^L} || prod_i P_{Z_i})
    std::vector<Nats> terms;   // I(Z_1^{i-1}; Z_i), i = 1..L
};

/// Divergence from the product of marginals and its chain-rule terms, for
/// an arbitrary (not necessarily exchangeable) joint.
Lemma1Result lemma1_decomposition(const GenericJoint& joint);

struct Lemma2Result {
    Nats lhs;  // sum_{m=k}^{n} I(X_1^{i-1}; X_i | X_{k+1}^m)
    Nats rhs;  // I(X_1^{i-1}; X_k^n)
};

/// Both sides of the chain-rule identity; equal for exchangeable laws.
Lemma2Result lemma2_check(const ExchangeableLaw& law, int i, int k);

}  // namespace definetti
