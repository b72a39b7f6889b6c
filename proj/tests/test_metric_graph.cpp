#include "doctest.h"
#include "support.hpp"

#include "tropcross/families.hpp"

#include <random>

using namespace testing_support;

namespace {

// Splits every finite edge of `c` into `parts` equal pieces.
AbstractTropicalCurve split_edges(AbstractTropicalCurve c, int parts, std::vector<VertexId>* created = nullptr) {
    std::size_t original = c.edges().size();
    for (std::size_t e = 0; e < original; ++e) {
        if (c.edges()[e].len.is_infinite()) continue;
        Rational piece = c.edges()[e].len.value() / parts;
        std::size_t current = e;
        for (int k = 1; k < parts; ++k) {
            auto s = subdivide(c, current, piece);
            c = s.curve;
            if (created) created->push_back(s.new_vertex);
            current = c.edges().size() - 1;
        }
    }
    return c;
}

AbstractTropicalCurve random_refinement(AbstractTropicalCurve c, std::mt19937_64& rng, int steps) {
    for (int k = 0; k < steps; ++k) {
        std::uniform_int_distribution<std::size_t> pick(0, c.edges().size() - 1);
        std::size_t e = pick(rng);
        if (c.edges()[e].len.is_infinite()) {
            c = subdivide(c, e, random_length(rng)).curve;
            continue;
        }
        Rational l = c.edges()[e].len.value();
        std::uniform_int_distribution<int> num(1, 6);
        int a = num(rng);
        c = subdivide(c, e, l * a / 7).curve;
    }
    return c;
}

}  // namespace

TEST_SUITE("metric_graph") {

TEST_CASE("genus counts independent cycles") {
    CHECK(theta(q(1), q(1), q(1)).genus() == 2);
    CHECK(path({q(1), q(2), q(3)}).genus() == 0);
    for (int g = 2; g <= 6; ++g) {
        auto c = make_family(parse_family_spec({"chain_of_loops", "g=" + std::to_string(g)}));
        CAPTURE(g);
        CHECK(c.genus() == g);
    }
}

TEST_CASE("construction rejects malformed graphs") {
    CHECK_THROWS_AS(AbstractTropicalCurve({0, 1}, {{0, 2, len(1)}}), Error);
    CHECK_THROWS_AS(AbstractTropicalCurve({0, 1, 2}, {{0, 1, len(1)}}), Error);
    CHECK_THROWS_AS(AbstractTropicalCurve({0, 0}, {}), Error);
}

TEST_CASE("subdivision is additive") {
    auto c = path({q(4)});
    auto s = subdivide(c, 0, q(1));
    REQUIRE(s.curve.edges().size() == 2);
    CHECK(s.curve.edges()[0].len.value() == q(1));
    CHECK(s.curve.edges()[1].len.value() == q(3));
    CHECK(s.curve.degree(s.new_vertex) == 2);
    CHECK_THROWS_AS(subdivide(c, 0, q(4)), Error);
    CHECK_THROWS_AS(subdivide(c, 0, q(0)), Error);
}

TEST_CASE("subdividing an infinite edge keeps an infinite tail") {
    auto c = tropical_modify(AbstractTropicalCurve({0}, {}), 0);
    REQUIRE(c.edges().size() == 1);
    CHECK(c.edges()[0].len.is_infinite());
    CHECK(c.infinite_vertices().size() == 1);
    auto s = subdivide(c, 0, q(2));
    int finite = 0, infinite = 0;
    for (const auto& e : s.curve.edges()) {
        if (e.len.is_infinite())
            ++infinite;
        else {
            ++finite;
            CHECK(e.len.value() == q(2));
        }
    }
    CHECK(finite == 1);
    CHECK(infinite == 1);
}

TEST_CASE("resolved theta: four-fold subdivision with seven legs") {
    auto right = theta(q(4), q(4), q(4));
    std::vector<VertexId> added;
    auto skeleton = split_edges(right, 4, &added);
    CHECK(skeleton.vertices().size() == 11);
    CHECK(skeleton.edges().size() == 12);
    REQUIRE(added.size() == 9);
    auto center = skeleton;
    for (int k = 0; k < 7; ++k) center = tropical_modify(center, added[k]);
    CHECK(center.infinite_vertices().size() == 7);
    CHECK(center.genus() == 2);
    CHECK(equivalent(center, right, true));
    CHECK_FALSE(equivalent(center, right, false));
    auto back = canonical_form(strip_infinite_edges(center));
    CHECK(equivalent(back, right, false));
    for (const auto& e : back.edges()) CHECK(e.len.value() == q(4));
}

TEST_CASE("canonical form suppresses degree-2 vertices") {
    auto c = canonical_form(path({q(1), q(2), q(3)}));
    REQUIRE(c.edges().size() == 1);
    CHECK(c.edges()[0].len.value() == q(6));
    auto loop = canonical_form(cycle(q(5), 5));
    REQUIRE(loop.edges().size() == 1);
    CHECK(loop.edges()[0].is_loop());
    CHECK(loop.edges()[0].len.value() == q(5));
}

TEST_CASE("canonical form never merges two infinite legs") {
    auto line = tropical_modify(tropical_modify(AbstractTropicalCurve({0}, {}), 0), 0);
    auto c = canonical_form(line);
    CHECK(c.edges().size() == 2);
    CHECK(c.infinite_vertices().size() == 2);
}

TEST_CASE("length multisets distinguish thetas") {
    CHECK(equivalent(theta(q(1), q(2), q(3)), theta(q(3), q(1), q(2)), false));
    CHECK_FALSE(equivalent(theta(q(1), q(1), q(1)), theta(q(1), q(1), q(2)), false));
    CHECK_FALSE(equivalent(theta(q(1), q(1), q(1)), theta(q(1), q(1), q(2)), true));
}

TEST_CASE("property: random subdivisions preserve the curve") {
    std::mt19937_64 rng(11);
    std::vector<AbstractTropicalCurve> bases{theta(q(1), q(2), q(3)), k4(), cycle(q(7, 2), 3),
                                             make_family(parse_family_spec({"lollipop"})),
                                             make_family(parse_family_spec({"barbell", "a=1", "b=2", "c=1/2"}))};
    for (int round = 0; round < 20; ++round) {
        for (const auto& base : bases) {
            auto refined = random_refinement(base, rng, 5);
            CHECK(refined.genus() == base.genus());
            CHECK(equivalent(refined, base, false));
            auto canon = canonical_form(refined);
            CHECK(equivalent(canonical_form(canon), canon, false));
            CHECK(canonical_form(canon).edges().size() == canon.edges().size());
        }
    }
}

TEST_CASE("property: modifications are invisible up to modification") {
    std::mt19937_64 rng(5);
    auto base = k4();
    for (int round = 0; round < 20; ++round) {
        auto c = random_refinement(base, rng, 3);
        std::uniform_int_distribution<std::size_t> pick(0, c.vertices().size() - 1);
        for (int k = 0; k < 3; ++k) {
            VertexId v = c.vertices()[pick(rng)];
            if (!c.is_infinite_vertex(v)) c = tropical_modify(c, v);
        }
        CHECK(c.genus() == 3);
        CHECK(equivalent(c, base, true));
    }
}

TEST_CASE("isometries map lengths to lengths") {
    auto a = theta(q(1), q(2), q(3));
    auto b = AbstractTropicalCurve({7, 9}, {{9, 7, len(2)}, {7, 9, len(3)}, {9, 7, len(1)}});
    auto map = find_isometry(a, b);
    REQUIRE(map);
    CHECK(map->at(0) != map->at(1));
    CHECK_FALSE(find_isometry(a, theta(q(1), q(2), q(4))));
}

TEST_CASE("sprawling certificates") {
    auto lollipop = make_family(parse_family_spec({"lollipop"}));
    auto cert = detect_sprawling(lollipop);
    REQUIRE(cert);
    CHECK(cert->obstructs_embedding());
    bool forced = false;
    for (const auto& comp : cert->components) forced = forced || comp.forced_trivalent() >= 2;
    CHECK(forced);

    auto windmill = make_family(parse_family_spec({"windmill"}));
    auto wcert = detect_sprawling(windmill);
    REQUIRE(wcert);
    CHECK_FALSE(wcert->obstructs_embedding());
    for (const auto& comp : wcert->components) CHECK(comp.trivalent == 1);

    auto caterpillar = make_family(parse_family_spec({"caterpillar", "leaves=10"}));
    CHECK_FALSE(detect_sprawling(caterpillar));
}

TEST_CASE("components after removing a vertex") {
    auto c = path({q(1), q(1), q(1), q(1)});
    auto parts = components_without(c, 2);
    CHECK(parts.size() == 2);
}

}
