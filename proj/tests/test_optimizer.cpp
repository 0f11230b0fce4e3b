#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "corpus.hpp"
#include "definetti/generators.hpp"
#include "definetti/optimizer.hpp"

using namespace definetti;

namespace {

void check_trace(const FitResult& fit) {
    REQUIRE_FALSE(fit.trace.empty());
    for (std::size_t t = 1; t < fit.trace.size(); ++t) CHECK(fit.trace[t] <= fit.trace[t - 1] + 1e-12);
    double wsum = 0;
    for (double w : fit.weights) {
        CHECK(w >= 0.0);
        wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("component_grid") {
    const auto g = component_grid(2, 2);
    REQUIRE(g.size() == 3);
    CHECK(g[0].probs() == std::vector<double>{0.0, 1.0});
    CHECK(g[1].probs() == std::vector<double>{0.5, 0.5});
    CHECK(g[2].probs() == std::vector<double>{1.0, 0.0});
    CHECK(component_grid(2, 100).size() == 101);
    CHECK(component_grid(3, 10).size() == 66);
    CHECK_THROWS_AS(component_grid(2, 0), std::invalid_argument);
}

TEST_CASE("fit_mixture_weights: basic contract") {
    const LetterDist q({0.3, 0.7});
    const auto target = densify(iid(q, 3));

    const auto single = fit_mixture_weights(target, {corpus::bern(0.5)});
    REQUIRE(single.weights.size() == 1);
    CHECK(single.weights[0] == 1.0);
    CHECK(std::abs(single.D.value() - relative_entropy(target, densify(iid(corpus::bern(0.5), 3))).value()) <= 1e-15);

    // EM converges sublinearly from the uniform start; started at the true
    // mixture it stays there.
    const std::vector<LetterDist> comps{corpus::bern(0.1), q, corpus::bern(0.9)};
    const auto rep = fit_mixture_weights(target, comps);
    check_trace(rep);
    CHECK(rep.D.value() <= 1e-7);
    CHECK(rep.weights[1] > 0.99);
    FitOptions at_truth;
    at_truth.initial_weights = std::vector<double>{0.0, 1.0, 0.0};
    const auto exact = fit_mixture_weights(target, comps, at_truth);
    CHECK(exact.D.value() <= 1e-10);

    const auto mix = corpus::bern_mixture(6);
    FitOptions at_mix;
    at_mix.initial_weights = std::vector<double>{0.5, 0.0, 0.5};
    const auto m3 = fit_mixture_weights(densify(marginal(mix, 3)), {LetterDist({0.7, 0.3}), q, LetterDist({0.3, 0.7})}, at_mix);
    CHECK(m3.D.value() <= 1e-10);

    CHECK_THROWS_AS(fit_mixture_weights(target, {}), std::invalid_argument);
}

TEST_CASE("fit_mixture_weights: infinite objective is reported") {
    const auto pair = densify(diaconis_pair());
    const auto fit = fit_mixture_weights(pair, {LetterDist({1.0, 0.0}), LetterDist({0.0, 1.0})});
    CHECK(fit.D.is_infinite());
    CHECK(fit.iterations == 0);
}

TEST_CASE("fit_mixture_weights: multi-start agreement") {
    const auto target = densify(marginal(polya({1, 1}, 6), 3));
    const auto comps = component_grid(2, 10);
    PortableRng rng(99);
    std::vector<double> finals;
    for (int start = 0; start < 10; ++start) {
        std::vector<double> w(comps.size());
        double z = 0;
        for (double& x : w) z += (x = 0.05 + rng.uniform());
        for (double& x : w) x /= z;
        FitOptions opt;
        opt.initial_weights = w;
        const auto fit = fit_mixture_weights(target, comps, opt);
        check_trace(fit);
        finals.push_back(fit.D.value());
    }
    const auto [lo, hi] = std::minmax_element(finals.begin(), finals.end());
    CHECK(*hi - *lo <= 1e-7);
}

TEST_CASE("fit_mixture_weights: Diaconis pair stays away from zero") {
    // M(0,1) <= 1/4 for every i.i.d. mixture, so D >= log 2.
    const auto fit = fit_mixture_weights(densify(diaconis_pair()), component_grid(2, 100));
    check_trace(fit);
    CHECK(fit.D.value() >= std::log(2.0) - 1e-12);
    CHECK(fit.D.value() <= std::log(2.0) + 1e-6);
    CHECK(std::abs(fit.D.value() - 0.69314718305878198) <= 1e-9);
}

TEST_CASE("improve_certificate") {
    const auto i = improve_certificate(iid(LetterDist({0.2, 0.3, 0.5}), 5), 2);
    CHECK(i.certificate.D.value() <= 1e-10);
    CHECK(i.fit.D.value() <= 1e-10);

    const auto k1 = improve_certificate(polya({1, 1}, 5), 1);
    CHECK(k1.certificate.D.value() <= 1e-12);
    CHECK(k1.fit.D.value() <= 1e-12);

    const auto p = improve_certificate(polya({1, 1}, 6), 2);
    check_trace(p.fit);
    CHECK(std::abs(p.certificate.D.value() - 0.0066240247173337749) <= 1e-13);
    CHECK(p.fit.D.value() < p.certificate.D.value());
    CHECK(p.fit.D.value() <= 1e-6);

    ImproveOptions only;
    only.constructed_only = true;
    const auto c = improve_certificate(polya({1, 1}, 6), 2, only);
    CHECK(c.components.size() == c.constructed.atoms.size());
    CHECK(c.fit.D.value() <= c.certificate.D.value() + 1e-9);

    for (const auto& [name, law] : corpus::fixtures(3, 5)) {
        for (int k = 1; k < law.n(); ++k) {
            ImproveOptions opt;
            opt.grid_resolution = 10;
            const auto r = improve_certificate(law, k, opt);
            CHECK_MESSAGE(r.fit.D.value() <= r.certificate.D.value() + 1e-9, name);
        }
    }
}

TEST_CASE("adversarial_search") {
    CHECK(certificate_ratio(iid(corpus::bern(0.3), 5), 2) <= 1e-12);

    SearchOptions opt;
    opt.restarts = 50;
    const auto r = adversarial_search(2, 4, 2, 0, opt);
    CHECK(r.best_ratio == doctest::Approx(0.62752060075515592).epsilon(1e-12));
    CHECK(r.best_restart == 3);
    CHECK(r.restart_ratios.size() == 50);
    CHECK(r.best_ratio <= 1.0 + 1e-9);
    for (double x : r.restart_ratios) CHECK(x <= r.best_ratio);
    CHECK(std::abs(certificate_ratio(r.best_law, 2) - r.best_ratio) <= 1e-15);

    SearchOptions par = opt;
    par.threads = 4;
    const auto r2 = adversarial_search(2, 4, 2, 0, par);
    CHECK(r2.best_ratio == r.best_ratio);
    CHECK(r2.restart_ratios == r.restart_ratios);
    CHECK(r2.best_law.seq_probs() == r.best_law.seq_probs());

    CHECK_THROWS_AS(adversarial_search(2, 4, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(adversarial_search(1, 4, 2, 0), std::invalid_argument);
}
