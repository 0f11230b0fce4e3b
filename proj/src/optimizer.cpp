#include "definetti/optimizer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "definetti/generators.hpp"
#include "definetti/numeric.hpp"
#include "definetti/parallel.hpp"

namespace definetti {

namespace {

// The objective depends on the weights only through the per-type mixture
// probabilities, so the EM update runs over type classes, not sequences.
class TypeObjective {
public:
    TypeObjective(const GenericJoint& target, const std::vector<LetterDist>& components)
        : target_(target), space_(target.alphabet_size(), target.length()) {
        const int m = target.alphabet_size();
        const int k = target.length();
        seq_type_.resize(target.size());
        class_mass_.assign(space_.size(), 0.0);
        std::vector<CompensatedSum> mass(space_.size());
        std::vector<int> counts(static_cast<std::size_t>(m));
        for (std::size_t idx = 0; idx < target.size(); ++idx) {
            std::fill(counts.begin(), counts.end(), 0);
            std::size_t rest = idx;
            for (int t = 0; t < k; ++t) {
                ++counts[rest % static_cast<std::size_t>(m)];
                rest /= static_cast<std::size_t>(m);
            }
            seq_type_[idx] = space_.index_of(counts);
            mass[seq_type_[idx]] += target[idx];
        }
        for (std::size_t t = 0; t < space_.size(); ++t) class_mass_[t] = mass[t].value();

        comp_.resize(components.size());
        for (std::size_t j = 0; j < components.size(); ++j) {
            if (components[j].alphabet_size() != m)
                throw std::invalid_argument("fit_mixture_weights: component alphabet mismatch");
            comp_[j].resize(space_.size());
            for (std::size_t t = 0; t < space_.size(); ++t) {
                double p = 1.0;
                for (int a = 0; a < m; ++a)
                    p *= std::pow(components[j][static_cast<std::size_t>(a)], space_[t].counts[static_cast<std::size_t>(a)]);
                comp_[j][t] = p;
            }
        }
    }

    bool covered() const {
        for (std::size_t t = 0; t < space_.size(); ++t) {
            if (class_mass_[t] <= 0.0) continue;
            bool any = false;
            for (const auto& c : comp_) any = any || c[t] > 0.0;
            if (!any) return false;
        }
        return true;
    }

    std::vector<double> mixture(const std::vector<double>& w) const {
        std::vector<double> mix(space_.size());
        for (std::size_t t = 0; t < space_.size(); ++t) {
            CompensatedSum s;
            for (std::size_t j = 0; j < comp_.size(); ++j)
                if (w[j] > 0.0) s += w[j] * comp_[j][t];
            mix[t] = s.value();
        }
        return mix;
    }

    double divergence(const std::vector<double>& mix) const {
        CompensatedSum s;
        for (std::size_t idx = 0; idx < target_.size(); ++idx) {
            const double p = target_[idx];
            if (p <= 0.0) continue;
            const double q = mix[seq_type_[idx]];
            if (q <= 0.0) return std::numeric_limits<double>::infinity();
            s += p * std::log(p / q);
        }
        return std::max(0.0, s.value());
    }

    std::vector<double> update(const std::vector<double>& w, const std::vector<double>& mix) const {
        std::vector<double> next(w.size());
        CompensatedSum total;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] <= 0.0) {
                next[j] = 0.0;
                continue;
            }
            CompensatedSum r;
            for (std::size_t t = 0; t < space_.size(); ++t)
                if (class_mass_[t] > 0.0) r += class_mass_[t] * comp_[j][t] / mix[t];
            next[j] = w[j] * r.value();
            total += next[j];
        }
        const double z = total.value();
        for (double& x : next) x /= z;
        return next;
    }

private:
    const GenericJoint& target_;
    TypeSpace space_;
    std::vector<std::size_t> seq_type_;
    std::vector<double> class_mass_;
    std::vector<std::vector<double>> comp_;  // per-sequence probability per type
};

}  // namespace

FitResult fit_mixture_weights(const GenericJoint& target, const std::vector<LetterDist>& components,
                              const FitOptions& options) {
    if (components.empty()) throw std::invalid_argument("fit_mixture_weights: empty component list");
    const TypeObjective objective(target, components);

    FitResult result;
    if (options.initial_weights) {
        result.weights = *options.initial_weights;
        if (result.weights.size() != components.size())
            throw std::invalid_argument("fit_mixture_weights: one initial weight per component required");
        CompensatedSum s;
        for (double w : result.weights) {
            if (!(w >= 0.0)) throw std::invalid_argument("fit_mixture_weights: negative initial weight");
            s += w;
        }
        if (!(s.value() > 0.0)) throw std::invalid_argument("fit_mixture_weights: zero initial weights");
        for (double& w : result.weights) w /= s.value();
    } else {
        result.weights.assign(components.size(), 1.0 / static_cast<double>(components.size()));
    }

    if (!objective.covered()) {
        result.D = Nats::infinity();
        result.trace.push_back(result.D.value());
        return result;
    }

    auto mix = objective.mixture(result.weights);
    double d = objective.divergence(mix);
    if (std::isinf(d)) throw std::invalid_argument("fit_mixture_weights: initial weights give infinite divergence");
    result.trace.push_back(d);

    while (result.iterations < options.max_iter) {
        if (d == 0.0) {
            result.converged = true;
            break;
        }
        auto next = objective.update(result.weights, mix);
        auto next_mix = objective.mixture(next);
        const double next_d = objective.divergence(next_mix);
        ++result.iterations;
        if (!(next_d <= d)) {
            // Rounding-level increase: keep the previous iterate.
            result.converged = true;
            break;
        }
        const double decrease = d - next_d;
        result.weights = std::move(next);
        mix = std::move(next_mix);
        d = next_d;
        result.trace.push_back(d);
        if (decrease < options.tol) {
            result.converged = true;
            break;
        }
    }
    result.D = Nats(d);
    return result;
}

std::vector<LetterDist> component_grid(int alphabet_size, int resolution) {
    if (resolution < 1) throw std::invalid_argument("component_grid: resolution must be >= 1");
    std::vector<LetterDist> out;
    for (const auto& t : enumerate_types(Alphabet(alphabet_size), resolution)) {
        std::vector<double> p(t.counts.size());
        for (std::size_t a = 0; a < p.size(); ++a) p[a] = static_cast<double>(t.counts[a]) / resolution;
        out.emplace_back(std::move(p), 1e-12);
    }
    return out;
}

ImprovedCertificate improve_certificate(const ExchangeableLaw& law, int k, const ImproveOptions& options) {
    auto cm = certify_with_mixture(law, k);
    ImprovedCertificate out{std::move(cm.certificate), std::move(cm.mixing), {}, {}};

    std::vector<double> constructed_w;
    for (const auto& atom : out.constructed.atoms) {
        out.components.push_back(atom.component);
        constructed_w.push_back(atom.weight);
    }
    if (!options.constructed_only) {
        for (auto& g : component_grid(law.alphabet_size(), options.grid_resolution)) out.components.push_back(std::move(g));
    }
    std::vector<double> feasible = constructed_w;
    feasible.resize(out.components.size(), 0.0);

    const GenericJoint target = densify(marginal(law, k));
    FitOptions fit = options.fit;
    if (options.constructed_only) {
        fit.initial_weights = feasible;
        out.fit = fit_mixture_weights(target, out.components, fit);
        return out;
    }

    // Interior start so every component can receive weight.
    std::vector<double> start(out.components.size());
    const double u = 1.0 / static_cast<double>(start.size());
    for (std::size_t j = 0; j < start.size(); ++j) start[j] = 0.5 * feasible[j] + 0.5 * u;
    fit.initial_weights = start;
    out.fit = fit_mixture_weights(target, out.components, fit);
    if (!(out.fit.D.value() <= out.certificate.D.value())) {
        fit.initial_weights = feasible;
        out.fit = fit_mixture_weights(target, out.components, fit);
    }
    return out;
}

double certificate_ratio(const ExchangeableLaw& law, int k) {
    const Certificate c = certify(law, k);
    return c.D.value() / c.cor_bound_logA.value();
}

namespace {

struct RestartOutcome {
    std::vector<double> best_mass;
    double best_ratio = -1.0;
};

ExchangeableLaw law_from_masses(const TypeSpace& space, const std::vector<double>& mass) {
    std::vector<double> q(space.size());
    for (std::size_t t = 0; t < space.size(); ++t) q[t] = mass[t] / space.mult(t);
    return ExchangeableLaw(space.alphabet_size(), space.length(), std::move(q));
}

void normalize(std::vector<double>& mass) {
    CompensatedSum s;
    for (double x : mass) s += x;
    const double z = s.value();
    for (double& x : mass) x /= z;
}

RestartOutcome run_restart(const TypeSpace& space, int k, std::uint64_t seed, int restart,
                           const SearchOptions& options) {
    PortableRng rng(seed, static_cast<std::uint64_t>(restart));
    std::vector<double> mass(space.size());
    if (restart == 0) {
        const std::vector<double> uniform(static_cast<std::size_t>(space.alphabet_size()),
                                          1.0 / space.alphabet_size());
        const auto start = iid(LetterDist(uniform), space.length());
        for (std::size_t t = 0; t < space.size(); ++t) mass[t] = start.class_mass(t);
    } else {
        const auto start = random_dirichlet(rng, space.alphabet_size(), space.length(), 1.0);
        for (std::size_t t = 0; t < space.size(); ++t) mass[t] = start.class_mass(t);
    }

    RestartOutcome out{mass, certificate_ratio(law_from_masses(space, mass), k)};
    for (int step = 0; step < options.steps; ++step) {
        const double frac = options.steps > 1 ? static_cast<double>(step) / (options.steps - 1) : 0.0;
        const double size = options.initial_step * std::pow(options.final_step / options.initial_step, frac);
        const auto coord = static_cast<std::size_t>(rng.below(space.size()));
        const double delta = size * (2.0 * rng.uniform() - 1.0);

        std::vector<double> candidate = out.best_mass;
        candidate[coord] = std::max(0.0, candidate[coord] + delta);
        CompensatedSum s;
        for (double x : candidate) s += x;
        if (!(s.value() > 0.0)) continue;
        normalize(candidate);

        const double ratio = certificate_ratio(law_from_masses(space, candidate), k);
        if (ratio > out.best_ratio) {
            out.best_ratio = ratio;
            out.best_mass = std::move(candidate);
        }
    }
    return out;
}

}  // namespace

SearchResult adversarial_search(int alphabet_size, int n, int k, std::uint64_t seed, const SearchOptions& options) {
    if (alphabet_size < 2) throw std::invalid_argument("adversarial_search: alphabet size must be >= 2");
    if (k < 2 || k > n - 1) throw std::invalid_argument("adversarial_search: need 2 <= k <= n-1");
    if (options.restarts < 1 || options.steps < 0) throw std::invalid_argument("adversarial_search: bad restarts/steps");

    const TypeSpace space(alphabet_size, n);
    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(options.restarts));
    parallel_for(outcomes.size(), options.threads, [&](std::size_t r) {
        outcomes[r] = run_restart(space, k, seed, static_cast<int>(r), options);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r)
        if (outcomes[r].best_ratio > outcomes[best].best_ratio) best = r;

    SearchResult result{law_from_masses(space, outcomes[best].best_mass), outcomes[best].best_ratio,
                        static_cast<int>(best), {}, seed, k};
    for (const auto& o : outcomes) result.restart_ratios.push_back(o.best_ratio);
    return result;
}

}  // namespace definetti
