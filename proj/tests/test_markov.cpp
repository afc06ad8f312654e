#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "test_support.hpp"
#include "truthdiscover/markov_field.hpp"

using namespace truthdiscover;

namespace {

MarkovField random_tree(testsupport::Rand& rng, std::size_t m) {
    MarkovField f(m);
    for (std::size_t i = 0; i < m; ++i) f.set_unary(i, rng.uniform(0.1, 3), rng.uniform(0.1, 3));
    for (std::size_t i = 1; i < m; ++i) {
        PairTable psi{};
        for (auto& row : psi) {
            for (auto& v : row) v = rng.uniform(0.1, 3);
        }
        f.add_edge(rng.below(i), i, psi);
    }
    return f;
}

}  // namespace

TEST_CASE("edgeless field gives normalized unaries") {
    MarkovField f(2);
    f.set_unary(0, 0.25, 0.75);
    f.set_unary(1, 2.0, 2.0);
    auto r = loopy_bp(f);
    CHECK(r.converged);
    CHECK(std::abs(r.p_true(0) - 0.75) <= 1e-15);
    CHECK(std::abs(r.p_true(1) - 0.5) <= 1e-15);
}

TEST_CASE("symmetric two-node field stays at one half") {
    MarkovField f(2);
    f.add_edge(0, 1, PairTable{{{1, 1}, {1, 1}}});
    auto r = loopy_bp(f);
    CHECK(std::abs(r.p_true(0) - 0.5) <= 1e-15);
    CHECK(std::abs(r.p_true(1) - 0.5) <= 1e-15);
}

TEST_CASE("potentials follow the exponential family") {
    std::vector<double> base{0.5, 0.5};
    std::vector<PairSimilarity> pairs{{0, 1, 1.0}};
    auto f = build_field(base, pairs);
    REQUIRE(f.edges().size() == 1);
    const auto& psi = f.edges()[0].psi;
    CHECK(std::abs(psi[1][1] - std::exp(1.0)) <= 1e-15);
    CHECK(std::abs(psi[0][0] - std::exp(-0.5)) <= 1e-15);
    CHECK(std::abs(psi[0][1] - std::exp(-1.0)) <= 1e-15);
    CHECK(psi[0][1] == psi[1][0]);

    std::vector<PairSimilarity> weak{{0, 1, 0.05}};
    CHECK(build_field(base, weak).edges().empty());
    FieldParams zero;
    zero.edge_threshold = 0.0;
    std::vector<PairSimilarity> none{{0, 1, 0.0}};
    auto inert = build_field(base, none, zero);
    REQUIRE(inert.edges().size() == 1);
    CHECK(inert.edges()[0].psi[0][1] == 1.0);
    CHECK(inert.edges()[0].psi[1][1] == 1.0);
}

TEST_CASE("unaries are clamped away from 0 and 1") {
    std::vector<double> base{0.0, 1.0};
    auto f = build_field(base, {});
    CHECK(f.unary(0)[1] == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(f.unary(1)[0] == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("edge storage is transposed for reversed endpoints") {
    MarkovField f(2);
    f.add_edge(1, 0, PairTable{{{1, 2}, {3, 4}}});
    REQUIRE(f.edges().size() == 1);
    CHECK(f.edges()[0].i == 0);
    CHECK(f.edges()[0].psi[0][1] == 3);
    CHECK(f.edges()[0].psi[1][0] == 2);
    CHECK_THROWS_AS(f.add_edge(0, 1, PairTable{{{0, 1}, {1, 1}}}), std::invalid_argument);
}

TEST_CASE("trees match enumeration") {
    testsupport::Rand rng(101);
    BpConfig tight{0.3, 1e-14, 5000};
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_tree(rng, 1 + rng.below(10));
        CHECK(f.is_forest());
        auto bp = loopy_bp(f, tight);
        auto exact = oracle::enumerate_marginals(f);
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(std::abs(bp.p_true(i) - exact[i]) <= 1e-9);
            CHECK(std::abs(bp.marginals[i][0] + bp.marginals[i][1] - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("loopy fields stay close to enumeration") {
    testsupport::Rand rng(202);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 3 + rng.below(6);
        std::vector<double> base(m);
        for (auto& b : base) b = rng.uniform(0.05, 0.95);
        std::vector<PairSimilarity> pairs;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) pairs.push_back({i, j, rng.uniform(0, 1)});
        }
        FieldParams params;
        params.coupling = rng.uniform(0.1, 1.0);
        auto f = build_field(base, pairs, params);
        auto bp = loopy_bp(f);
        CHECK(bp.converged);
        auto exact = oracle::enumerate_marginals(f);
        for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(bp.p_true(i) - exact[i]) <= 0.05);
    }
}

TEST_CASE("round cap reports non-convergence") {
    testsupport::Rand rng(7);
    auto f = random_tree(rng, 8);
    auto r = loopy_bp(f, BpConfig{0.3, 1e-300, 3});
    CHECK_FALSE(r.converged);
    CHECK(r.rounds == 3);
}

TEST_CASE("forest detection") {
    MarkovField f(3);
    PairTable one{{{1, 1}, {1, 1}}};
    f.add_edge(0, 1, one);
    f.add_edge(1, 2, one);
    CHECK(f.is_forest());
    f.add_edge(0, 2, one);
    CHECK_FALSE(f.is_forest());
}
