#pragma once

// Exchangeable laws on A^n in type-class form, plus the generic dense joint
// used for non-exchangeable inputs and for outputs indexed by sequences.
//
// Only finite alphabets are supported.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "definetti/types.hpp"

namespace definetti {

/// Tolerance for the normalization invariant of constructed laws.
inline constexpr double kNormalizationTol = 1e-12;

/// Raised when conditioning on an event of probability zero.
class UndefinedConditional : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Probability mass function on the alphabet.
class LetterDist {
public:
    explicit LetterDist(std::vector<double> p, double tol = kNormalizationTol);

    int alphabet_size() const { return static_cast<int>(p_.size()); }
    double operator[](std::size_t a) const { return p_[a]; }
    const std::vector<double>& probs() const { return p_; }

private:
    std::vector<double> p_;
};

/// Arbitrary distribution on A^L stored densely. Sequence (x_1..x_L) lives at
/// index sum_t x_t * m^(L-t), so x_1 is the most significant digit.
class GenericJoint {
public:
    GenericJoint(int alphabet_size, int length, std::vector<double> prob,
                 double tol = kNormalizationTol);

    int alphabet_size() const { return m_; }
    int length() const { return length_; }
    std::size_t size() const { return prob_.size(); }
    double operator[](std::size_t i) const { return prob_[i]; }
    const std::vector<double>& probs() const { return prob_; }

    double at(std::span<const int> sequence) const;
    /// Decode a dense index back into its sequence.
    std::vector<int> sequence(std::size_t index) const;

private:
    int m_;
    int length_;
    std::vector<double> prob_;
};

/// Number of sequences m^L; throws if it would exceed dense limits.
std::size_t dense_size(int alphabet_size, int length);

/// Exchangeable law stored as one per-sequence probability per type class.
class ExchangeableLaw {
public:
    /// seq_prob is indexed by lexicographic type rank (see TypeSpace).
    ExchangeableLaw(int alphabet_size, int n, std::vector<double> seq_prob,
                    double tol = kNormalizationTol);

    int alphabet_size() const { return space_.alphabet_size(); }
    int n() const { return space_.length(); }
    const TypeSpace& space() const { return space_; }

    double seq_prob(std::size_t type_index) const { return q_[type_index]; }
    double seq_prob(const TypeVector& t) const { return q_[space_.index_of(t)]; }
    const std::vector<double>& seq_probs() const { return q_; }

    /// Total mass of a type class: multiplicity * per-sequence probability.
    double class_mass(std::size_t type_index) const { return space_.mult(type_index) * q_[type_index]; }

private:
    TypeSpace space_;
    std::vector<double> q_;
};

/// Joint law of two disjoint coordinate blocks of lengths a and b.
/// joint(i, j) is the probability of one particular pair of sequences with
/// types first[i], second[j].
class BlockJoint {
public:
    BlockJoint(int alphabet_size, int a, int b, std::vector<double> joint);

    int alphabet_size() const { return first_.alphabet_size(); }
    int a() const { return first_.length(); }
    int b() const { return second_.length(); }
    const TypeSpace& first() const { return first_; }
    const TypeSpace& second() const { return second_; }

    double operator()(std::size_t i, std::size_t j) const { return joint_[i * second_.size() + j]; }

    /// Per-sequence marginal of the first block (indexed by first-block type).
    std::vector<double> first_marginal() const;
    std::vector<double> second_marginal() const;

    BlockJoint transpose() const;

private:
    TypeSpace first_;
    TypeSpace second_;
    std::vector<double> joint_;
};

GenericJoint densify(const ExchangeableLaw& law);
ExchangeableLaw symmetrize(const GenericJoint& joint);
bool is_exchangeable(const GenericJoint& joint, double tol);

/// Law of X_1^k.
ExchangeableLaw marginal(const ExchangeableLaw& law, int k);

/// Joint law of any two disjoint blocks of sizes a and b.
BlockJoint block_joint(const ExchangeableLaw& law, int a, int b);

/// Probability that a block of length w.length() has type w (class mass).
double block_type_probability(const ExchangeableLaw& law, const TypeVector& w);

/// Conditional law of X_1 given that a disjoint block of length
/// w.length() has type w.
LetterDist conditional_component(const ExchangeableLaw& law, const TypeVector& w);

/// Conditional law of X_1^k given a disjoint block of type w; exchangeable.
ExchangeableLaw conditional_law(const ExchangeableLaw& law, int k, const TypeVector& w);

/// conditional_law in dense form.
GenericJoint conditional_block(const ExchangeableLaw& law, int k, const TypeVector& w);

}  // namespace definetti
