#include "rainbow/graphon.hpp"

#include "rainbow/blowup.hpp"
#include "rainbow/witness.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace rainbow;

namespace {

EdgeColoring random_coloring(int n, int r, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    EdgeColoring c(n, r);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            c.set_color(u, v, static_cast<int>(rng() % r));
    return c;
}

// r=2, q=2 step graphon with unequal blocks, a partition of unity everywhere
StepColoringGraphon lopsided_graphon() {
    StepColoringGraphon w;
    w.r = 2;
    w.q = 2;
    w.block_weights = {Rational(1, 3), Rational(2, 3)};
    w.values = {
        {{Rational(1, 4), Rational(2, 5)}, {Rational(2, 5), Rational(5, 6)}},
        {{Rational(3, 4), Rational(3, 5)}, {Rational(3, 5), Rational(1, 6)}},
    };
    validate(w);
    return w;
}

} // namespace

TEST_CASE("uniform graphon shape") {
    auto w = uniform_graphon(3);
    CHECK(w.r == 3);
    CHECK(w.q == 1);
    CHECK_FALSE(w.associated);
    validate(w);
    CHECK_THROWS_AS(uniform_graphon(0), Error);
}

TEST_CASE("validate rejects broken graphons") {
    auto w = lopsided_graphon();

    auto bad = w;
    bad.values[0][0][1] = Rational(1, 2); // breaks symmetry
    CHECK_THROWS_AS(validate(bad), Error);

    bad = w;
    bad.values[0][0][0] = Rational(1, 2); // cell sum != 1
    CHECK_THROWS_AS(validate(bad), Error);

    bad = w;
    bad.values[0][0][0] = Rational(-1, 4);
    bad.values[1][0][0] = Rational(5, 4); // out of [0, 1]
    CHECK_THROWS_AS(validate(bad), Error);

    bad = w;
    bad.block_weights = {Rational(1, 2), Rational(1, 3)}; // weights sum != 1
    CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("graphon file round trip") {
    auto w = lopsided_graphon();
    std::stringstream buf;
    write_graphon(buf, w);
    auto back = read_graphon(buf);
    CHECK(back.r == w.r);
    CHECK(back.q == w.q);
    CHECK(back.block_weights == w.block_weights);
    CHECK(back.values == w.values);

    std::ifstream file(std::string(RAINBOW_DATA_DIR) + "/uniform3.graphon");
    REQUIRE(file.good());
    auto u3 = read_graphon(file);
    CHECK(u3.r == 3);
    CHECK(u3.q == 1);
    CHECK(rainbow_density(cycle_graph(3), u3).value == Rational(2, 9));
}

TEST_CASE("triangle density in the uniform 3-graphon") {
    auto d = rainbow_density(cycle_graph(3), uniform_graphon(3));
    CHECK(d.value == Rational(2, 9));
    CHECK(d.injection_count == 6);
}

TEST_CASE("baseline matches uniform graphons") {
    std::vector<Graph> patterns = {cycle_graph(3), cycle_graph(4), path_graph(2),
                                   path_graph(3),  complete_graph(4)};
    for (const auto& h : patterns)
        for (int r = 1; r <= 6; ++r)
            CHECK(rainbow_density(h, uniform_graphon(r)).value == baseline_density(h, r));
}

TEST_CASE("too few colors means zero density") {
    CHECK(rainbow_density(cycle_graph(3), uniform_graphon(2)).value == 0);
    CHECK(baseline_density(cycle_graph(3), 2) == 0);
}

TEST_CASE("direct and elimination strategies agree") {
    auto w = lopsided_graphon();
    std::vector<Graph> patterns = {cycle_graph(3), cycle_graph(4), path_graph(3),
                                   make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}})};
    for (const auto& h : patterns) {
        auto direct = rainbow_density(h, w, Budget{}, DensityStrategy::Direct);
        auto dp = rainbow_density(h, w, Budget{}, DensityStrategy::EliminationDp);
        CHECK(direct.value == dp.value);
    }
}

TEST_CASE("block refinement leaves densities unchanged") {
    auto w = lopsided_graphon();
    // split block 1 (weight 2/3) into two equal halves with identical rows
    StepColoringGraphon fine;
    fine.r = 2;
    fine.q = 3;
    fine.block_weights = {Rational(1, 3), Rational(1, 3), Rational(1, 3)};
    fine.values.assign(2, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3)));
    auto from_coarse = [](int fine_block) { return fine_block == 0 ? 0 : 1; };
    for (int color = 0; color < 2; ++color)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                fine.values[color][a][b] = w.values[color][from_coarse(a)][from_coarse(b)];
    validate(fine);
    for (const auto& h : {cycle_graph(3), cycle_graph(4), path_graph(2)})
        CHECK(rainbow_density(h, fine).value == rainbow_density(h, w).value);
}

TEST_CASE("associated graphon structure") {
    auto c = fixture_k5();
    auto w = associated_graphon(c);
    CHECK(w.q == 5);
    CHECK(w.r == 4);
    CHECK(w.associated);
    validate(w);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int color = 0; color < 4; ++color) {
                Rational expect = 0;
                if (a != b && c.color(a, b) == color)
                    expect = 1;
                CHECK(w.values[color][a][b] == expect);
            }
}

TEST_CASE("density bridge: associated graphon densities count homomorphisms") {
    std::vector<Graph> patterns = {path_graph(2), cycle_graph(3), cycle_graph(4)};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        int n = 3 + static_cast<int>(seed % 4); // hosts K3..K6
        EdgeColoring c = random_coloring(n, 3, 900 + seed);
        auto w = associated_graphon(c);
        for (const auto& h : patterns) {
            Rational lhs = rainbow_density(h, w).value * int_pow(n, h.n());
            CHECK(lhs == Rational(rainbow_hom_count(h, c)));
        }
    }
}

TEST_CASE("rainbow homomorphism counts") {
    CHECK(rainbow_hom_count(cycle_graph(4), fixture_k5()) == 64); // 8 copies x |Aut(C4)|
    EdgeColoring c = random_coloring(5, 4, 3);
    // single edge: ordered pairs of distinct vertices
    CHECK(rainbow_hom_count(make_graph(2, {{0, 1}}), c) == 20);
}

TEST_CASE("graphon evaluation budget") {
    Budget tiny;
    tiny.graphon_cells = 10;
    CHECK_THROWS_AS(rainbow_density(complete_graph(4), uniform_graphon(6), tiny), Error);
    Budget tiny_hom;
    tiny_hom.hom_maps = 10;
    CHECK_THROWS_AS(rainbow_hom_count(cycle_graph(4), fixture_k5(), tiny_hom), Error);
}

TEST_CASE("read_graphon infers the associated flag from zero diagonals") {
    auto w = associated_graphon(fixture_k5());
    std::stringstream buf;
    write_graphon(buf, w);
    auto back = read_graphon(buf);
    CHECK(back.associated);
    validate(back);
}
