#pragma once

// I-projection of a target law onto mixtures of i.i.d. laws with a fixed
// component set, and a random-restart probe for laws where the log bound
// k(k-1)/(2(n-k+1)) log m is nearly attained.

#include <cstdint>
#include <optional>
#include <vector>

#include "definetti/definetti.hpp"

namespace definetti {

struct FitOptions {
    int max_iter = 100000;
    /// Stop once one update decreases D by less than this.
    double tol = 1e-12;
    /// Starting weights; uniform when absent.
    std::optional<std::vector<double>> initial_weights;
};

struct FitResult {
    std::vector<double> weights;
    Nats D;
    int iterations = 0;
    std::vector<double> trace;  // D before the first update, then after each
    bool converged = false;
};

/// Minimizes D(target || sum_j w_j C_j^k) over the simplex with
/// multiplicative (EM) updates. When some target sequence has zero
/// probability under every component, D is +inf for all weights and the
/// result reports that without iterating.
FitResult fit_mixture_weights(const GenericJoint& target, const std::vector<LetterDist>& components,
                              const FitOptions& options = {});

/// All simplex points with coordinates in multiples of 1/resolution,
/// lexicographic in the counts.
std::vector<LetterDist> component_grid(int alphabet_size, int resolution);

struct ImprovedCertificate {
    Certificate certificate;
    MixingMeasure constructed;
    std::vector<LetterDist> components;  // constructed atoms first, then grid
    FitResult fit;
};

struct ImproveOptions {
    int grid_resolution = 20;
    bool constructed_only = false;
    FitOptions fit;
};

/// certify() followed by re-weighting over constructed atoms and a grid.
/// The returned fit never has larger D than the constructed mixture.
ImprovedCertificate improve_certificate(const ExchangeableLaw& law, int k, const ImproveOptions& options = {});

struct SearchOptions {
    int restarts = 10;
    int steps = 200;
    double initial_step = 0.5;
    double final_step = 0.005;
    int threads = 1;
};

struct SearchResult {
    ExchangeableLaw best_law;
    double best_ratio = 0.0;
    int best_restart = 0;
    std::vector<double> restart_ratios;
    std::uint64_t seed = 0;
    int k = 0;
};

/// Ratio D / cor_bound_logA of the constructed mixture.
double certificate_ratio(const ExchangeableLaw& law, int k);

/// Random-restart coordinate ascent on the type-class masses maximizing
/// certificate_ratio. Restart 0 starts from the uniform i.i.d. law, the
/// others from Dirichlet(1) draws. Deterministic in the seed regardless of
/// the thread count. The result is a lower bound on the worst case only.
SearchResult adversarial_search(int alphabet_size, int n, int k, std::uint64_t seed,
                                const SearchOptions& options = {});

}  // namespace definetti
