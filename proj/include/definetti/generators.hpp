#pragma once

// Exchangeable law families used as CLI inputs and as the test corpus.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "definetti/exchangeable.hpp"

namespace definetti {

struct MixtureComponent {
    double weight;
    LetterDist dist;
};

ExchangeableLaw iid(const LetterDist& q, int n);
ExchangeableLaw iid_mixture(const std::vector<MixtureComponent>& components, int n);

/// Polya urn started from the given positive counts (one ball added per draw).
ExchangeableLaw polya(const std::vector<int>& initial_counts, int n);

/// Draws without replacement; throws std::range_error if n exceeds the total.
ExchangeableLaw urn_without_replacement(const std::vector<int>& counts, int n);

/// Pr(1,0) = Pr(0,1) = 1/2: exchangeable but not a mixture of i.i.d. pairs.
ExchangeableLaw diaconis_pair();

/// Reproducible random engine: std::mt19937_64 (output fully specified by the
/// standard) with hand-written variate transforms, since the std::
/// distributions are implementation-defined.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
    PortableRng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1).
    double uniform_open();
    double normal();
    /// Gamma(shape, 1), Marsaglia-Tsang.
    double gamma(double shape);
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

/// Symmetric Dirichlet(alpha) draw over type classes of length n; each class
/// mass is spread uniformly over its sequences.
ExchangeableLaw random_dirichlet(std::uint64_t seed, int alphabet_size, int n, double concentration);

/// Same construction from an existing engine.
ExchangeableLaw random_dirichlet(PortableRng& rng, int alphabet_size, int n, double concentration);

struct GeneratorSpec {
    std::string kind;  // iid | iid_mixture | polya | urn | diaconis_pair | random_dirichlet
    int n = 0;
    std::vector<std::vector<double>> components;  // letter laws (iid uses the first)
    std::vector<double> weights;
    std::vector<int> counts;
    int alphabet_size = 0;
    double concentration = 1.0;
    std::optional<std::uint64_t> seed;
};

/// Validates the spec for its kind and builds the law.
ExchangeableLaw generate(const GeneratorSpec& spec);

}  // namespace definetti
