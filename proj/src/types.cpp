#include "definetti/types.hpp"

#include <limits>
#include <numeric>
#include <string>

namespace definetti {

int TypeVector::length() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

TypeVector TypeVector::unit(int alphabet_size, int symbol) {
    TypeVector t = zero(alphabet_size);
    t.counts.at(static_cast<std::size_t>(symbol)) = 1;
    return t;
}

TypeVector operator+(const TypeVector& a, const TypeVector& b) {
    if (a.counts.size() != b.counts.size())
        throw std::invalid_argument("type vectors over different alphabets");
    TypeVector out = a;
    for (std::size_t i = 0; i < b.counts.size(); ++i) out.counts[i] += b.counts[i];
    return out;
}

std::size_t composition_count(int total, int parts) {
    if (total < 0 || parts < 0) return 0;
    if (parts == 0) return total == 0 ? 1 : 0;
    // C(total + parts - 1, parts - 1)
    const std::uint64_t n = static_cast<std::uint64_t>(total) + static_cast<std::uint64_t>(parts) - 1;
    std::uint64_t r = static_cast<std::uint64_t>(parts) - 1;
    if (r > n - r) r = n - r;
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        c = c * (n - r + i) / i;
        if (c > std::numeric_limits<std::size_t>::max())
            throw std::range_error("composition count overflow");
    }
    return static_cast<std::size_t>(c);
}

namespace {

void enumerate_into(std::vector<int>& prefix, int remaining, int parts_left,
                    std::vector<TypeVector>& out) {
    if (parts_left == 1) {
        prefix.push_back(remaining);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        prefix.push_back(v);
        enumerate_into(prefix, remaining - v, parts_left - 1, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<TypeVector> enumerate_types(const Alphabet& alphabet, int length) {
    if (length < 0) throw std::invalid_argument("type length must be >= 0");
    std::vector<TypeVector> out;
    out.reserve(composition_count(length, alphabet.size()));
    std::vector<int> prefix;
    prefix.reserve(static_cast<std::size_t>(alphabet.size()));
    enumerate_into(prefix, length, alphabet.size(), out);
    return out;
}

std::uint64_t multiplicity(const TypeVector& type) {
    const int length = type.length();
    if (length > kMaxTypeLength)
        throw std::range_error("multiplicity: length " + std::to_string(length) +
                               " exceeds supported maximum " + std::to_string(kMaxTypeLength));
    // Product of binomials C(s_j, c_j) with running partial sums s_j; each
    // partial product is itself a multinomial, so the divisions are exact.
    unsigned __int128 result = 1;
    int running = 0;
    for (int c : type.counts) {
        if (c < 0) throw std::invalid_argument("negative count in type vector");
        for (int i = 1; i <= c; ++i) {
            ++running;
            result = result * static_cast<unsigned>(running) / static_cast<unsigned>(i);
        }
    }
    if (result > std::numeric_limits<std::uint64_t>::max())
        throw std::range_error("multiplicity does not fit in 64 bits");
    return static_cast<std::uint64_t>(result);
}

TypeVector type_of(std::span<const int> sequence, int alphabet_size) {
    TypeVector t = TypeVector::zero(alphabet_size);
    for (int s : sequence) {
        if (s < 0 || s >= alphabet_size) throw std::out_of_range("symbol outside alphabet");
        ++t.counts[static_cast<std::size_t>(s)];
    }
    return t;
}

TypeSpace::TypeSpace(int alphabet_size, int length)
    : m_(alphabet_size), length_(length), types_(enumerate_types(Alphabet(alphabet_size), length)) {
    mult_exact_.reserve(types_.size());
    mult_.reserve(types_.size());
    for (const auto& t : types_) {
        mult_exact_.push_back(multiplicity(t));
        mult_.push_back(static_cast<double>(mult_exact_.back()));
    }
}

std::size_t TypeSpace::index_of(const TypeVector& type) const { return index_of(type.counts); }

std::size_t TypeSpace::index_of(std::span<const int> counts) const {
    if (static_cast<int>(counts.size()) != m_)
        throw std::invalid_argument("type vector has wrong alphabet size");
    std::size_t rank = 0;
    int remaining = length_;
    for (int j = 0; j + 1 < m_; ++j) {
        const int c = counts[static_cast<std::size_t>(j)];
        if (c < 0 || c > remaining) throw std::invalid_argument("type vector does not match length");
        for (int v = 0; v < c; ++v) rank += composition_count(remaining - v, m_ - j - 1);
        remaining -= c;
    }
    if (counts.back() != remaining) throw std::invalid_argument("type vector does not match length");
    return rank;
}

}  // namespace definetti
