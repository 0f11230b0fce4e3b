#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "definetti/exchangeable.hpp"
#include "definetti/generators.hpp"
#include "oracle/dense_oracle.hpp"

using namespace definetti;

namespace {

GenericJoint point_mass(int m, const std::vector<int>& seq) {
    std::vector<double> p(dense_size(m, static_cast<int>(seq.size())), 0.0);
    std::size_t idx = 0;
    for (int x : seq) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(x);
    p[idx] = 1.0;
    return GenericJoint(m, static_cast<int>(seq.size()), p);
}

oracle::Dense to_dense(const ExchangeableLaw& law) {
    const auto d = densify(law);
    return {law.alphabet_size(), law.n(), d.probs()};
}

std::vector<corpus::Named> small_corpus() {
    std::vector<corpus::Named> out;
    for (auto& f : corpus::fixtures(2, 6)) out.push_back(std::move(f));
    for (auto& r : corpus::random_laws(5, 2, 6)) out.push_back(std::move(r));
    return out;
}

}  // namespace


TEST_CASE("symmetrize: examples") {
    const auto pm = symmetrize(point_mass(2, {0, 1}));
    CHECK(pm.seq_prob(TypeVector({1, 1})) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pm.seq_prob(TypeVector({2, 0})) == 0.0);

    // Pr(1,0) = Pr(0,1) = 1/2
    const GenericJoint pair(2, 2, {0.0, 0.5, 0.5, 0.0});
    const auto sp = symmetrize(pair);
    CHECK(sp.seq_prob(TypeVector({1, 1})) == 0.5);
    CHECK(sp.seq_prob(TypeVector({0, 2})) == 0.0);
    CHECK(sp.seq_prob(TypeVector({2, 0})) == 0.0);

    const auto law = polya({1, 2}, 4);
    const auto again = symmetrize(densify(law));
    for (std::size_t t = 0; t < law.space().size(); ++t)
        CHECK(std::abs(again.seq_prob(t) - law.seq_prob(t)) <= 1e-15);
}

TEST_CASE("symmetrize is idempotent and agrees on class masses") {
    PortableRng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = 2 + trial % 2;
        const int L = 1 + trial % 4;
        std::vector<double> p(dense_size(m, L));
        double z = 0;
        for (double& x : p) z += (x = rng.uniform());
        for (double& x : p) x /= z;
        const GenericJoint j(m, L, p);
        const auto s1 = symmetrize(j);
        const auto s2 = symmetrize(densify(s1));
        CHECK(s1.seq_probs() == s2.seq_probs());
        CHECK(is_exchangeable(densify(s1), 1e-15));
        // class masses preserved
        std::vector<double> mass(s1.space().size(), 0.0);
        for (std::size_t idx = 0; idx < j.size(); ++idx)
            mass[s1.space().index_of(type_of(j.sequence(idx), m))] += j[idx];
        for (std::size_t t = 0; t < mass.size(); ++t) CHECK(std::abs(mass[t] - s1.class_mass(t)) <= 1e-15);
    }
}

TEST_CASE("is_exchangeable") {
    CHECK(is_exchangeable(densify(iid(LetterDist({1.0 / 3, 1.0 / 3, 1.0 / 3}), 3)), 1e-15));
    CHECK_FALSE(is_exchangeable(point_mass(2, {0, 1}), 1e-3));
    CHECK(is_exchangeable(densify(symmetrize(point_mass(3, {0, 2, 1}))), 1e-15));
}

TEST_CASE("ExchangeableLaw rejects invalid input") {
    CHECK_THROWS_AS(ExchangeableLaw(2, 2, {0.5, 0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ExchangeableLaw(2, 2, {0.5, 0.25}), std::invalid_argument);
    CHECK_THROWS_AS(ExchangeableLaw(2, 2, {-0.1, 0.3, 0.5}), std::invalid_argument);
    CHECK_NOTHROW(ExchangeableLaw(2, 2, {0.25, 0.25, 0.25}));
}

TEST_CASE("marginal: examples") {
    const auto law = polya({1, 1}, 5);
    const auto full = marginal(law, 5);
    CHECK(full.seq_probs() == law.seq_probs());

    const LetterDist q({0.2, 0.5, 0.3});
    const auto m2 = marginal(iid(q, 5), 2);
    const auto direct = iid(q, 2);
    for (std::size_t t = 0; t < m2.space().size(); ++t) CHECK(std::abs(m2.seq_prob(t) - direct.seq_prob(t)) <= 1e-15);

    // Urn with 2 red, 2 blue; enumeration of the 6 draw orders gives
    // P(00) = P(11) = 1/6 and P(01) = P(10) = 1/3.
    const auto urn2 = marginal(urn_without_replacement({2, 2}, 4), 2);
    CHECK(urn2.seq_prob(TypeVector({2, 0})) == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(urn2.seq_prob(TypeVector({0, 2})) == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(urn2.seq_prob(TypeVector({1, 1})) == doctest::Approx(1.0 / 3).epsilon(1e-14));

    const auto m0 = marginal(law, 0);
    CHECK(m0.space().size() == 1);
    CHECK(m0.seq_prob(0) == doctest::Approx(1.0));
}

TEST_CASE("marginal consistency") {
    for (const auto& [name, law] : small_corpus()) {
        for (int k2 = 0; k2 <= law.n(); ++k2) {
            for (int k1 = 0; k1 <= k2; ++k1) {
                const auto a = marginal(marginal(law, k2), k1);
                const auto b = marginal(law, k1);
                for (std::size_t t = 0; t < a.space().size(); ++t)
                    REQUIRE_MESSAGE(std::abs(a.seq_prob(t) - b.seq_prob(t)) <= 1e-13, name);
            }
        }
    }
}

TEST_CASE("block_joint: examples and invariants") {
    // Polya(1,1) two draws: P(00) = 1/3, P(01) = P(10) = 1/6, P(11) = 1/3.
    const auto bj = block_joint(polya({1, 1}, 3), 1, 1);
    const TypeVector zero({1, 0}), one({0, 1});
    CHECK(bj(bj.first().index_of(zero), bj.second().index_of(zero)) == doctest::Approx(1.0 / 3));
    CHECK(bj(bj.first().index_of(zero), bj.second().index_of(one)) == doctest::Approx(1.0 / 6));
    CHECK(bj(bj.first().index_of(one), bj.second().index_of(zero)) == doctest::Approx(1.0 / 6));
    CHECK(bj(bj.first().index_of(one), bj.second().index_of(one)) == doctest::Approx(1.0 / 3));

    const auto law = polya({1, 2, 1}, 5);
    const auto degenerate = block_joint(law, 0, 3);
    const auto m3 = marginal(law, 3);
    for (std::size_t j = 0; j < degenerate.second().size(); ++j) CHECK(degenerate(0, j) == doctest::Approx(m3.seq_prob(j)));

    const LetterDist q({0.6, 0.4});
    const auto ind = block_joint(iid(q, 5), 2, 3);
    const auto pa = marginal(iid(q, 5), 2);
    const auto pb = marginal(iid(q, 5), 3);
    for (std::size_t i = 0; i < ind.first().size(); ++i)
        for (std::size_t j = 0; j < ind.second().size(); ++j)
            CHECK(std::abs(ind(i, j) - pa.seq_prob(i) * pb.seq_prob(j)) <= 1e-15);

    for (const auto& [name, law2] : small_corpus()) {
        for (int a = 0; a <= law2.n(); ++a) {
            const int b = law2.n() - a;
            const auto j = block_joint(law2, a, b);
            const auto ma = marginal(law2, a);
            const auto rows = j.first_marginal();
            double total = 0;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                REQUIRE_MESSAGE(std::abs(rows[i] - ma.seq_prob(i)) <= 1e-13, name);
                total += j.first().mult(i) * rows[i];
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("conditional_component: examples") {
    const auto law = polya({1, 1}, 4);
    const auto p1 = marginal(law, 1);
    const auto c0 = conditional_component(law, TypeVector({0, 0}));
    CHECK(c0[0] == doctest::Approx(p1.seq_prob(TypeVector({1, 0}))));

    const LetterDist q({0.1, 0.3, 0.6});
    const auto iid_law = iid(q, 5);
    for (const auto& w : enumerate_types(Alphabet(3), 3)) {
        const auto c = conditional_component(iid_law, w);
        for (std::size_t a = 0; a < 3; ++a) CHECK(std::abs(c[a] - q[a]) <= 1e-14);
    }

    // Two ones observed under Polya(1,1): P(X_1 = 1 | w) = 3/4.
    const auto c = conditional_component(polya({1, 1}, 3), TypeVector({0, 2}));
    CHECK(c[1] == doctest::Approx(0.75).epsilon(1e-14));

    const auto urn = urn_without_replacement({2, 0}, 2);
    CHECK_THROWS_AS(conditional_component(urn, TypeVector({0, 1})), UndefinedConditional);
}

TEST_CASE("conditional_block: examples and total probability") {
    // Polya(1,1) after observing one 1 is Polya(1,2): P(00)=P(01)=P(10)=1/6, P(11)=1/2.
    const auto cb = conditional_block(polya({1, 1}, 4), 2, TypeVector({0, 1}));
    CHECK(cb[0] == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(cb[1] == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(cb[2] == doctest::Approx(1.0 / 6).epsilon(1e-14));
    CHECK(cb[3] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(is_exchangeable(cb, 1e-15));

    const LetterDist q({0.25, 0.75});
    const auto iid_cb = conditional_block(iid(q, 5), 3, TypeVector({1, 1}));
    const auto qk = densify(iid(q, 3));
    for (std::size_t i = 0; i < qk.size(); ++i) CHECK(std::abs(iid_cb[i] - qk[i]) <= 1e-15);

    for (const auto& [name, law] : small_corpus()) {
        for (int k = 1; k < law.n(); ++k) {
            const int b = law.n() - k;
            const auto target = densify(marginal(law, k));
            std::vector<double> mixed(target.size(), 0.0);
            for (const auto& w : enumerate_types(Alphabet(law.alphabet_size()), b)) {
                const double pw = block_type_probability(law, w);
                if (pw <= 0) continue;
                const auto c = conditional_block(law, k, w);
                for (std::size_t i = 0; i < c.size(); ++i) mixed[i] += pw * c[i];
            }
            for (std::size_t i = 0; i < mixed.size(); ++i) REQUIRE_MESSAGE(std::abs(mixed[i] - target[i]) <= 1e-12, name);
        }
    }
}

TEST_CASE("oracle equivalence: marginals, block joints, conditionals") {
    for (const auto& [name, law] : small_corpus()) {
        INFO(name);
        const auto d = to_dense(law);
        const int n = law.n();
        const int m = law.alphabet_size();
        for (int k = 0; k <= n; ++k) {
            const auto om = oracle::marginal(d, k);
            const auto em = densify(marginal(law, k));
            for (std::size_t i = 0; i < om.p.size(); ++i) REQUIRE(std::abs(om.p[i] - em[i]) <= 1e-12);
        }
        // First a coordinates against the last b coordinates.
        for (int a = 0; a <= n; ++a) {
            for (int b = 0; a + b <= n; ++b) {
                const auto bj = block_joint(law, a, b);
                const auto proj = oracle::project(d, oracle::concat(oracle::range(0, a), oracle::range(n - b, n)));
                const std::size_t nb = oracle::power(m, b);
                for (std::size_t idx = 0; idx < proj.size(); ++idx) {
                    const auto sa = oracle::Dense{m, a, {}}.seq(idx / nb);
                    const auto sb = oracle::Dense{m, b, {}}.seq(idx % nb);
                    const double e = bj(bj.first().index_of(type_of(sa, m)), bj.second().index_of(type_of(sb, m)));
                    REQUIRE(std::abs(e - proj[idx]) <= 1e-12);
                }
            }
        }
        // Conditioning on concrete suffix sequences X_{k+1}^{k+b}.
        for (int k = 1; k < n; ++k) {
            for (int b = 0; k + b <= n; ++b) {
                for (std::size_t wi = 0; wi < oracle::power(m, b); ++wi) {
                    const auto w = oracle::Dense{m, b, {}}.seq(wi);
                    const auto wt = type_of(w, m);
                    if (block_type_probability(law, wt) <= 0) {
                        CHECK_THROWS_AS(conditional_block(law, k, wt), UndefinedConditional);
                        continue;
                    }
                    const auto o = oracle::conditional_block(d, k, w);
                    const auto e = conditional_block(law, k, wt);
                    for (std::size_t i = 0; i < o.size(); ++i) REQUIRE(std::abs(o[i] - e[i]) <= 1e-12);
                }
            }
        }
    }
}
