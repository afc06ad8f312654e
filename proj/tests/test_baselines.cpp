#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "truthdiscover/baselines.hpp"

using namespace truthdiscover;

namespace {

ConflictSet make_set(std::vector<std::pair<double, std::vector<const char*>>> objects) {
    ConflictSet set{EntityClusterId("e"), PredicateId("p"), {}};
    for (auto& [v, srcs] : objects) {
        ConflictObject o{NormalizedValue::number(v), {}};
        for (auto* s : srcs) o.sources.emplace_back(s);
        set.objects.push_back(std::move(o));
    }
    return set;
}

}  // namespace

TEST_CASE("vote picks the strict majority") {
    auto set = make_set({{1, {"a", "b", "c"}}, {2, {"d"}}, {3, {"e"}}});
    CHECK(vote(set).chosen_index == 0);
}

TEST_CASE("vote tie falls back to canonical order") {
    auto set = make_set({{46.0248, {"yago"}}, {93, {"freebase"}}});
    auto d = vote(set);
    CHECK(d.chosen == NormalizedValue::number(46.0248));
    CHECK(d.method == BaselineMethod::Vote);
}

TEST_CASE("vote agrees with a recount and ignores source names") {
    testsupport::Rand rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = 2 + rng.below(5);
        ConflictSet set{EntityClusterId("e"), PredicateId("p"), {}};
        std::size_t best = 0, best_count = 0;
        for (std::size_t o = 0; o < m; ++o) {
            ConflictObject obj{NormalizedValue::number(static_cast<double>(o)), {}};
            std::size_t count = 1 + rng.below(4);
            for (std::size_t k = 0; k < count; ++k) obj.sources.emplace_back("s" + std::to_string(o) + "_" + std::to_string(k));
            if (count > best_count) {
                best = o;
                best_count = count;
            }
            set.objects.push_back(std::move(obj));
        }
        CHECK(vote(set).chosen_index == best);
        for (auto& obj : set.objects) {
            for (auto& s : obj.sources) s = SourceId("renamed_" + s.str());
        }
        CHECK(vote(set).chosen_index == best);
    }
}

TEST_CASE("TruthFinder matches a hand-run trace") {
    // Source A claims 10 and 20, B claims 40. Similarities:
    // s(10,20) = 2/3, s(10,40) = 0.4, s(20,40) = 2/3.
    auto store = ClaimStore::from_claims({
        Claim{EntityClusterId("e"), PredicateId("p"), NormalizedValue::number(10), SourceId("A")},
        Claim{EntityClusterId("e"), PredicateId("p"), NormalizedValue::number(20), SourceId("A")},
        Claim{EntityClusterId("e"), PredicateId("p"), NormalizedValue::number(40), SourceId("B")},
    });
    TruthFinderConfig cfg;
    cfg.max_iterations = 3;
    cfg.tolerance = 0.0;
    auto r = truthfinder(store, cfg);

    double ta = 0.9, tb = 0.9;
    const double s12 = 1.0 - 10.0 / 30.0, s13 = 1.0 - 30.0 / 50.0, s23 = 1.0 - 20.0 / 60.0;
    double c1 = 0, c2 = 0, c3 = 0;
    for (int it = 0; it < 3; ++it) {
        double a = -std::log(1 - ta), b = -std::log(1 - tb);
        double x1 = a + 0.5 * (a * (s12 - 0.5) + b * (s13 - 0.5));
        double x2 = a + 0.5 * (a * (s12 - 0.5) + b * (s23 - 0.5));
        double x3 = b + 0.5 * (a * (s13 - 0.5) + a * (s23 - 0.5));
        c1 = 1 / (1 + std::exp(-0.3 * x1));
        c2 = 1 / (1 + std::exp(-0.3 * x2));
        c3 = 1 / (1 + std::exp(-0.3 * x3));
        ta = (c1 + c2) / 2;
        tb = c3;
    }
    REQUIRE(r.sources.size() == 2);
    CHECK(r.iterations == 3);
    CHECK(std::abs(r.trust[0] - ta) <= 1e-12);
    CHECK(std::abs(r.trust[1] - tb) <= 1e-12);
    CHECK(std::abs(r.decisions[0].scores[2] - c3) <= 1e-12);
    CHECK(std::abs(r.decisions[0].scores[0] - c1) <= 1e-12);
}

TEST_CASE("TruthFinder trust stays inside the unit interval") {
    testsupport::Rand rng(41);
    std::vector<Claim> claims;
    for (int s = 0; s < 40; ++s) {
        for (int src = 0; src < 6; ++src) {
            if (rng.below(2)) {
                claims.push_back({EntityClusterId("e" + std::to_string(s)), PredicateId("p"),
                                  NormalizedValue::number(static_cast<double>(rng.below(4))), SourceId("w" + std::to_string(src))});
            }
        }
    }
    auto r = truthfinder(ClaimStore::from_claims(claims));
    CHECK(r.min_trust_seen >= 0.0);
    CHECK(r.max_trust_seen <= 1.0);
    for (double t : r.trust) {
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
    }
}
