#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "tropcross/divisor.hpp"
#include "tropcross/families.hpp"
#include "tropcross/newton_polygon.hpp"

#include <random>

using namespace testing_support;

namespace {

Config random_config(std::mt19937_64& rng, std::size_t n, int lo, int hi) {
    std::uniform_int_distribution<int> coef(lo, hi);
    Config c(n);
    for (auto& x : c) x = coef(rng);
    return c;
}

std::int64_t degree_of(const Config& c) {
    std::int64_t d = 0;
    for (auto x : c) d += x;
    return d;
}

Config point_config(const FiniteGraphModel& m, std::initializer_list<std::size_t> vs) {
    Config c(m.num_vertices, 0);
    for (auto v : vs) c[v] += 1;
    return c;
}

PlaneTropicalCurve classical_line() {
    return PlaneTropicalCurve::from_arrangement({{q(0), q(0)}}, {}, {{0, {1, 2}}, {0, {-1, -2}}});
}

}  // namespace

TEST_SUITE("divisor") {

TEST_CASE("models of a theta") {
    auto m = uniform_model(theta(q(1), q(1), q(1)));
    CHECK(m.num_vertices == 2);
    CHECK(m.edges.size() == 3);
    CHECK(m.genus() == 2);
    CHECK(m.scale == q(1));

    auto h = uniform_model(theta(q(1, 2), q(1), q(1)));
    CHECK(h.scale == q(2));
    CHECK(h.edge_chain[0].size() == 2);
    CHECK(h.edge_chain[1].size() == 3);
    CHECK(h.edge_chain[2].size() == 3);
    CHECK(h.edges.size() == 5);
    CHECK(h.genus() == 2);
}

TEST_CASE("extra points refine the model") {
    auto c = cycle(q(3), 1);
    auto m = uniform_model(c, {CurvePoint::at_edge(0, q(1, 3))});
    CHECK(m.scale == q(3));
    CHECK(m.edges.size() == 9);
    CHECK(m.num_vertices == 9);
    CHECK(m.vertex_at(CurvePoint::at_edge(0, q(1, 3))) == m.edge_chain[0][1]);
    CHECK_THROWS_AS(m.vertex_at(CurvePoint::at_edge(0, q(1, 7))), Error);
}

TEST_CASE("unit loops are doubled so the model stays loopless") {
    auto m = uniform_model(cycle(q(1), 1));
    CHECK(m.scale == q(2));
    CHECK(m.num_vertices == 2);
    for (auto [u, v] : m.edges) CHECK(u != v);
}

TEST_CASE("vertex cap") {
    ModelOptions opts;
    opts.max_vertices = 10;
    try {
        uniform_model(theta(q(1, 7), q(1), q(1)), {}, opts);
        FAIL("cap not enforced");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
}

TEST_CASE("infinite legs project to their finite end") {
    auto c = tropical_modify(theta(q(1), q(1), q(1)), 0);
    std::size_t leg = 0;
    for (std::size_t e = 0; e < c.edges().size(); ++e)
        if (c.edges()[e].len.is_infinite()) leg = e;
    auto m = uniform_model(c);
    CHECK(m.num_vertices == 2);
    CHECK(m.vertex_at(CurvePoint::at_edge(leg, q(5))) == m.vertex_of.at(0));
}

TEST_CASE("Dhar reduction on small cycles") {
    auto m = uniform_model(cycle(q(3), 3));
    REQUIRE(m.num_vertices == 3);
    Config zero(3, 0);
    CHECK(dhar_reduce(m, zero, 0).divisor == zero);
    auto v = point_config(m, {0});
    CHECK(dhar_reduce(m, v, 0).divisor == v);
    auto u = point_config(m, {1});
    auto red = dhar_reduce(m, u, 0);
    CHECK(degree_of(red.divisor) == 1);
    CHECK(oracle::superstable_by_subsets(m, red.divisor, 0));
    CHECK(oracle::linearly_equivalent(m, red.divisor, u));
    CHECK(apply_script(m, u, red.script) == red.divisor);
    // A single chip never moves on a cycle of length >= 2.
    CHECK(red.divisor == u);
}

TEST_CASE("property: reductions are reduced and equivalent") {
    std::mt19937_64 rng(12);
    std::vector<FiniteGraphModel> models{uniform_model(cycle(q(4), 4)), uniform_model(theta(q(1), q(2), q(1))),
                                         uniform_model(k4()), uniform_model(path({q(1), q(1), q(2)}))};
    for (const auto& m : models) {
        for (int round = 0; round < 40; ++round) {
            auto d = random_config(rng, m.num_vertices, -3, 4);
            std::uniform_int_distribution<std::size_t> pick(0, m.num_vertices - 1);
            std::size_t qv = pick(rng);
            auto red = dhar_reduce(m, d, qv);
            CHECK(oracle::superstable_by_subsets(m, red.divisor, qv));
            CHECK(is_reduced(m, red.divisor, qv));
            CHECK(oracle::linearly_equivalent(m, red.divisor, d));
            CHECK(apply_script(m, d, red.script) == red.divisor);
            CHECK(equivalent_to_effective(m, d) == (red.divisor[qv] >= 0));
            CHECK(equivalent_to_effective(m, d) == oracle::effective_equivalent(m, d));
            // Reduced forms are unique: reducing an equivalent divisor gives the same one.
            auto moved = apply_script(m, d, random_config(rng, m.num_vertices, -2, 2));
            CHECK(dhar_reduce(m, moved, qv).divisor == red.divisor);
        }
    }
}

TEST_CASE("superstability agrees with subset enumeration") {
    std::mt19937_64 rng(4);
    auto m = uniform_model(theta(q(1), q(2), q(2)));
    REQUIRE(m.num_vertices <= 6);
    for (int round = 0; round < 200; ++round) {
        auto c = random_config(rng, m.num_vertices, 0, 2);
        c[0] = 0;
        CHECK(is_superstable(m, c, 0) == oracle::superstable_by_subsets(m, c, 0));
    }
}

TEST_CASE("ranks on trees, cycles and thetas") {
    auto tree = uniform_model(path({q(1), q(1)}));
    CHECK(rank(tree, point_config(tree, {0})) == 1);
    auto c = uniform_model(cycle(q(4), 4));
    CHECK(rank(c, point_config(c, {0})) == 0);
    CHECK(rank(c, point_config(c, {0, 2})) == 1);
    CHECK(rank(c, point_config(c, {0, 1})) == 1);
    auto t = uniform_model(theta(q(1), q(1), q(1)));
    CHECK(rank(t, point_config(t, {0, 1})) == 1);
    CHECK(rank(t, point_config(t, {0})) == 0);
    Config neg(t.num_vertices, 0);
    neg[0] = -1;
    CHECK(rank(t, neg) == -1);
}

TEST_CASE("property: rank matches the exhaustive oracle") {
    std::mt19937_64 rng(21);
    std::vector<FiniteGraphModel> models{uniform_model(cycle(q(4), 4)), uniform_model(theta(q(1), q(2), q(1))),
                                         uniform_model(k4())};
    for (const auto& m : models) {
        for (int round = 0; round < 12; ++round) {
            auto d = random_config(rng, m.num_vertices, -1, 2);
            if (degree_of(d) > 4 || degree_of(d) < 0) continue;
            CHECK(rank(m, d) == oracle::rank(m, d));
            CHECK(has_rank_at_least_one(m, d) == (oracle::rank(m, d) >= 1));
        }
    }
}

TEST_CASE("Riemann-Roch on a refined theta") {
    ModelOptions opts;
    opts.refinement = 2;
    auto m = uniform_model(theta(q(1), q(1), q(1)), {}, opts);
    REQUIRE(m.num_vertices <= 10);
    auto k = canonical_divisor(m);
    CHECK(degree_of(k) == 2 * m.genus() - 2);
    std::mt19937_64 rng(6);
    for (int round = 0; round < 10; ++round) {
        auto d = random_config(rng, m.num_vertices, -1, 1);
        auto rr = riemann_roch_check(m, d);
        CHECK(rr.holds);
        CHECK(rr.rank_d - rr.rank_k_minus_d == rr.degree + 1 - rr.genus);
    }
}

TEST_CASE("gonality of small curves") {
    CHECK(gonality(path({q(1), q(2)})).gonality == 1);
    CHECK(gonality(cycle(q(3), 3)).gonality == 2);
    for (std::int64_t r : {1, 2, 3}) {
        ModelOptions opts;
        opts.refinement = r;
        auto g = gonality(theta(q(1), q(1), q(1)), std::nullopt, opts);
        CAPTURE(r);
        CHECK(g.gonality == 2);
        CHECK(g.witness.degree() == 2);
        CHECK(g.refinement == r);
    }
}

TEST_CASE("gonality of a chain of two loops") {
    auto spec = generic_chain_of_loops(2);
    auto c = make_family(spec);
    REQUIRE(c.genus() == 2);
    auto g = gonality(c);
    CHECK(g.gonality == 2);
    CHECK(g.witness.is_effective());
}

TEST_CASE("gonality search may come back empty") {
    auto g = gonality(theta(q(1), q(1), q(1)), 1);
    CHECK_FALSE(g.gonality);
    CHECK(g.d_max == 1);
}

TEST_CASE("divisor model round trip") {
    auto c = theta(q(1), q(1, 2), q(1));
    Divisor d;
    d.terms.push_back({CurvePoint::at_vertex(0), 2});
    d.terms.push_back({CurvePoint::at_edge(1, q(1, 4)), -1});
    auto m = uniform_model(c, {CurvePoint::at_edge(1, q(1, 4))});
    auto cfg = m.to_config(d);
    CHECK(degree_of(cfg) == 1);
    auto back = m.to_config(m.to_divisor(cfg));
    CHECK(back == cfg);
    CHECK(d.degree() == 1);
    CHECK_FALSE(d.is_effective());
}

TEST_CASE("points at edge ends normalize to vertices") {
    auto c = theta(q(1), q(2), q(3));
    auto p = normalize_point(c, CurvePoint::at_edge(1, q(2)));
    CHECK_FALSE(p.on_edge);
    CHECK(p.vertex == 1);
    CHECK(normalize_point(c, CurvePoint::at_edge(1, q(0))) == CurvePoint::at_vertex(0));
    CHECK_THROWS_AS(normalize_point(c, CurvePoint::at_edge(1, q(3))), Error);
}

TEST_CASE("line sections have rank at least one") {
    ModelOptions opts;
    opts.max_vertices = 512;
    auto rep = plane_representative(parse_family_spec({"theta", "a=1", "b=1", "c=1"}));
    auto r = verify_line_section_rank(rep.curve, {1, 0}, rep.curve.points()[0][0] + q(1, 8), opts);
    CHECK(r.degree == lattice_width(dual_subdivision(rep.curve).newton).width);
    CHECK(r.holds);

    auto bar = plane_representative(parse_family_spec({"barbell", "a=1", "b=2", "c=1"}));
    Rational x = bar.curve.points()[0][0];
    auto rb = verify_line_section_rank(bar.curve, {1, 0}, x + q(1, 8), opts);
    CHECK(rb.holds);
    CHECK(rb.degree >= 1);
}

TEST_CASE("line sections need more than one classical line") {
    try {
        verify_line_section_rank(classical_line(), {1, 0}, q(1));
        FAIL("accepted a straight line");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Precondition);
    }
    auto r = verify_line_section_rank(standard_line(), {1, 0}, q(1));
    CHECK(r.holds);
    CHECK(r.degree == 1);
}

}
