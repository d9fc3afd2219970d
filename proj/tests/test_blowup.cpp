#include "rainbow/blowup.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace rainbow;

TEST_CASE("fixtures match their dictionaries") {
    auto k5 = fixture_k5();
    CHECK(k5.n() == 5);
    CHECK(k5.r() == 4);
    CHECK(k5.color(0, 1) == 3);
    CHECK(k5.color(0, 2) == 0);
    CHECK(k5.color(3, 4) == 1);

    auto k8 = fixture_k8();
    CHECK(k8.n() == 8);
    CHECK(k8.r() == 5);
    CHECK(k8.color(0, 1) == 1);
    CHECK(k8.color(5, 6) == 4);
    CHECK(k8.color(6, 7) == 3);
}

TEST_CASE("named fixture sources") {
    CHECK(load_coloring("fixture:K5") == fixture_k5());
    CHECK(load_coloring("fixture:K8") == fixture_k8());
    CHECK_THROWS_AS(load_coloring("fixture:K9"), Error);
}

TEST_CASE("depth-1 blowup is the seed itself") {
    CHECK(blowup_coloring({fixture_k5(), 1}) == fixture_k5());
    CHECK(blowup_coloring({fixture_k8(), 1}) == fixture_k8());
}

TEST_CASE("first differing digit colors the pair") {
    auto seed = fixture_k5();
    auto c = blowup_coloring({seed, 2});
    CHECK(c.n() == 25);
    // vertices 7 = (1,2) and 8 = (1,3): same first digit, differ in the
    // second, so the color comes from the seed edge (2,3)
    CHECK(c.color(7, 8) == seed.color(2, 3));
    // vertices 7 = (1,2) and 13 = (2,3): first digits differ, so (1,2)
    CHECK(c.color(7, 13) == seed.color(1, 2));
}

TEST_CASE("self-similarity: every first-digit class is the previous depth") {
    auto seed = fixture_k5();
    int m = seed.n();
    auto deep = blowup_coloring({seed, 2});
    for (int digit = 0; digit < m; ++digit) {
        EdgeColoring cls(m, seed.r());
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v)
                cls.set_color(u, v, deep.color(digit * m + u, digit * m + v));
        CHECK(cls == seed);
    }
}

TEST_CASE("lower bound formula") {
    CHECK(blowup_lower_bound(8, 5, 4, 2) == 5040);
    CHECK(blowup_lower_bound(8, 5, 4, 1) == 8);
    CHECK(blowup_lower_bound(128, 8, 5, 1) == 128);
    // d=2 by hand: ell * (m^(d-1))^v + ell * m * 1
    CHECK(blowup_lower_bound(3, 2, 3, 2) == 3 * 8 + 3 * 2);
}

TEST_CASE("verified dominance for the shipped fixtures") {
    auto rep1 = verify_blowup(cycle_graph(4), {fixture_k5(), 1});
    CHECK(rep1.seed_rainbow == 8);
    CHECK(rep1.actual_rainbow == 8);
    CHECK(rep1.lower_bound == 8);
    CHECK(rep1.dominates);

    auto rep2 = verify_blowup(cycle_graph(4), {fixture_k5(), 2});
    CHECK(rep2.lower_bound == 5040);
    CHECK(rep2.actual_rainbow >= 5040);
    CHECK(rep2.dominates);

    auto rep3 = verify_blowup(cycle_graph(5), {fixture_k8(), 1});
    CHECK(rep3.actual_rainbow == 128);
    CHECK(rep3.dominates);
}

TEST_CASE("depth-2 count is reproduced by the slow oracle") {
    auto c = blowup_coloring({fixture_k5(), 2});
    auto fast = count_rainbow(cycle_graph(4), c).copies;
    CHECK(fast == oracle::slow_rainbow_count(cycle_graph(4), c));
}

TEST_CASE("asymptotic beat at depth 2") {
    // rainbow density of the blowup already exceeds the uniform baseline
    auto c = blowup_coloring({fixture_k5(), 2});
    Rational actual_density(count_rainbow(cycle_graph(4), c).copies,
                            int_pow(c.n(), 4));
    Rational uniform_density = baseline_density(cycle_graph(4), 4) /
                               Rational(automorphism_count(cycle_graph(4)));
    CHECK(actual_density > uniform_density);
}

TEST_CASE("blowup budget") {
    Budget tiny;
    tiny.blowup_vertices = 20;
    CHECK_THROWS_AS(blowup_coloring({fixture_k5(), 2}, tiny), Error);
    try {
        blowup_coloring({fixture_k5(), 2}, tiny);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapExceeded);
    }
    CHECK_THROWS_AS(blowup_coloring({fixture_k5(), 0}), Error);
}

TEST_CASE("deep fixture count", "[.][slow]") {
    // K64 full enumeration; excluded from the default run
    auto rep = verify_blowup(cycle_graph(5), {fixture_k8(), 2});
    CHECK(rep.actual_rainbow >= rep.lower_bound);
}
