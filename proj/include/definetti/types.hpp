#pragma once

// Method-of-types machinery for finite alphabets.
//
// A type (composition) of length L over an alphabet of m symbols is the
// vector of symbol counts of a sequence in A^L. All exchangeable laws are
// constant on type classes, so every computation in this library is
// indexed by types rather than by sequences.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace definetti {

/// Largest sequence length for which multiplicities are supported.
inline constexpr int kMaxTypeLength = 30;

/// Finite alphabet {0, ..., size-1}.
class Alphabet {
public:
    explicit Alphabet(int size) : size_(size) {
        if (size < 1) throw std::invalid_argument("alphabet size must be >= 1");
    }
    int size() const { return size_; }
    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    int size_;
};

/// Symbol counts of a sequence; length() is the sequence length.
struct TypeVector {
    std::vector<int> counts;

    TypeVector() = default;
    explicit TypeVector(std::vector<int> c) : counts(std::move(c)) {}

    int alphabet_size() const { return static_cast<int>(counts.size()); }
    int length() const;

    /// Unit type e_a of length 1.
    static TypeVector unit(int alphabet_size, int symbol);
    static TypeVector zero(int alphabet_size) { return TypeVector(std::vector<int>(alphabet_size, 0)); }

    friend TypeVector operator+(const TypeVector& a, const TypeVector& b);
    friend auto operator<=>(const TypeVector&, const TypeVector&) = default;
    friend bool operator==(const TypeVector&, const TypeVector&) = default;
};

/// Number of compositions of `total` into `parts` nonnegative parts.
std::size_t composition_count(int total, int parts);

/// All types of length L over m symbols in lexicographic order of counts.
std::vector<TypeVector> enumerate_types(const Alphabet& alphabet, int length);

/// Multinomial coefficient L! / prod counts_a!. Exact integer arithmetic;
/// throws std::range_error when L > kMaxTypeLength or the value does not
/// fit in 64 bits.
std::uint64_t multiplicity(const TypeVector& type);

/// Type of a concrete sequence.
TypeVector type_of(std::span<const int> sequence, int alphabet_size);

/// Enumerated type classes of one length, with O(m) ranking.
class TypeSpace {
public:
    TypeSpace(int alphabet_size, int length);

    int alphabet_size() const { return m_; }
    int length() const { return length_; }
    std::size_t size() const { return types_.size(); }

    const TypeVector& operator[](std::size_t i) const { return types_[i]; }
    const std::vector<TypeVector>& types() const { return types_; }

    double mult(std::size_t i) const { return mult_[i]; }
    std::uint64_t mult_exact(std::size_t i) const { return mult_exact_[i]; }

    /// Lexicographic rank of a type of this length.
    std::size_t index_of(const TypeVector& type) const;
    std::size_t index_of(std::span<const int> counts) const;

private:
    int m_;
    int length_;
    std::vector<TypeVector> types_;
    std::vector<std::uint64_t> mult_exact_;
    std::vector<double> mult_;
};

}  // namespace definetti
