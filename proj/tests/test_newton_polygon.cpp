#include "doctest.h"
#include "support.hpp"

#include "tropcross/families.hpp"
#include "tropcross/immersion_builder.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>

using namespace testing_support;

namespace {

LatticePolygon poly(std::vector<LatticePoint> pts) { return LatticePolygon::hull_of(std::move(pts)); }

// Brute-force interior/boundary counts over the bounding box.
std::pair<std::int64_t, std::int64_t> count_by_scan(const LatticePolygon& p) {
    const auto& vs = p.vertices();
    std::int64_t x0 = vs[0][0], x1 = x0, y0 = vs[0][1], y1 = y0;
    for (const auto& v : vs) {
        x0 = std::min(x0, v[0]);
        x1 = std::max(x1, v[0]);
        y0 = std::min(y0, v[1]);
        y1 = std::max(y1, v[1]);
    }
    std::int64_t in = 0, on = 0;
    for (std::int64_t x = x0; x <= x1; ++x)
        for (std::int64_t y = y0; y <= y1; ++y) {
            bool inside = true, boundary = false;
            for (std::size_t k = 0; k < vs.size(); ++k) {
                const auto& a = vs[k];
                const auto& b = vs[(k + 1) % vs.size()];
                std::int64_t cr = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
                if (cr < 0) inside = false;
                if (cr == 0) boundary = true;
            }
            if (!inside) continue;
            (boundary ? on : in) += 1;
        }
    return {in, on};
}

std::int64_t width_by_scan(const LatticePolygon& p, int bound) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b) {
            if (a == 0 && b == 0) continue;
            std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
            for (const auto& v : p.vertices()) {
                std::int64_t s = a * v[0] + b * v[1];
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            best = std::min(best, hi - lo);
        }
    return best;
}

PlaneTropicalCurve crossing_lines() {
    return PlaneTropicalCurve::from_arrangement({{q(-1), q(0)}, {q(0), q(-1)}}, {},
                                                {{0, {1, 0}}, {0, {-1, 0}}, {1, {0, 1}}, {1, {0, -1}}});
}

}  // namespace

TEST_SUITE("newton_polygon") {

TEST_CASE("hull drops collinear and interior points") {
    auto p = poly({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}, {0, 1}});
    CHECK(p.vertices().size() == 4);
    CHECK(p.kind() == PolygonKind::Polygon);
    CHECK(p.twice_area() == 8);
    CHECK(poly({{1, 1}}).kind() == PolygonKind::Point);
    CHECK(poly({{0, 0}, {3, 0}, {1, 0}}).kind() == PolygonKind::Segment);
    CHECK(poly({}).kind() == PolygonKind::Empty);
}

TEST_CASE("lattice point counts") {
    auto unit = lattice_points(poly({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(unit.interior.empty());
    CHECK(unit.boundary.size() == 3);
    auto cubic = lattice_points(poly({{0, 0}, {3, 0}, {0, 3}}));
    CHECK(cubic.interior.size() == 1);
    CHECK(cubic.boundary.size() == 9);
    auto square = lattice_points(poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
    CHECK(square.interior.size() == 1);
    CHECK(square.boundary.size() == 8);
}

TEST_CASE("Pick's formula on small polygons") {
    auto unit = pick_verify(poly({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(unit.holds);
    CHECK(unit.area == q(1, 2));
    CHECK(unit.total == 3);
    CHECK(unit.boundary == 3);
    auto square = pick_verify(poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
    CHECK(square.holds);
    CHECK(square.area == q(4));
    CHECK(square.total == 9);
    CHECK(square.boundary == 8);
    CHECK_THROWS_AS(pick_verify(poly({{0, 0}, {4, 0}})), Error);
}

TEST_CASE("property: Pick and point counts on random hulls") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coord(-9, 9);
    int done = 0;
    while (done < 200) {
        std::vector<LatticePoint> pts;
        for (int k = 0; k < 12; ++k) pts.push_back({coord(rng), coord(rng)});
        auto p = poly(pts);
        if (p.kind() != PolygonKind::Polygon) continue;
        auto pc = pick_verify(p);
        CHECK(pc.holds);
        auto sets = lattice_points(p);
        auto [in, on] = count_by_scan(p);
        CHECK(static_cast<std::int64_t>(sets.interior.size()) == in);
        CHECK(static_cast<std::int64_t>(sets.boundary.size()) == on);
        CHECK(pc.total == in + on);
        ++done;
    }
}

TEST_CASE("lattice width") {
    auto unit = lattice_width(poly({{0, 0}, {1, 0}, {0, 1}}));
    CHECK(unit.width == 1);
    auto two = lattice_width(poly({{0, 0}, {2, 0}, {0, 2}}));
    CHECK(two.width == 2);
    CHECK(two.width == width_by_scan(poly({{0, 0}, {2, 0}, {0, 2}}), 4));
    auto seg = lattice_width(poly({{0, 0}, {5, 0}}));
    CHECK(seg.width == 0);
    CHECK(seg.direction == LatticePoint{0, 1});
    CHECK_THROWS(lattice_width(poly({})));
}

TEST_CASE("property: lattice width matches a direct scan") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coord(-5, 5);
    for (int round = 0; round < 100; ++round) {
        std::vector<LatticePoint> pts;
        for (int k = 0; k < 6; ++k) pts.push_back({coord(rng), coord(rng)});
        auto p = poly(pts);
        if (p.kind() == PolygonKind::Point) continue;
        auto w = lattice_width(p);
        CHECK(w.width == width_by_scan(p, 11));
        std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
        for (const auto& v : p.vertices()) {
            std::int64_t s = w.direction[0] * v[0] + w.direction[1] * v[1];
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        CHECK(hi - lo == w.width);
        CHECK(std::gcd(w.direction[0], w.direction[1]) == 1);
    }
}

TEST_CASE("interior hull") {
    CHECK(interior_hull(poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}})).vertices() == std::vector<LatticePoint>{{1, 1}});
    CHECK(interior_hull(poly({{0, 0}, {4, 0}, {0, 4}})) == poly({{1, 1}, {2, 1}, {1, 2}}));
    CHECK(interior_hull(poly({{0, 0}, {1, 0}, {0, 1}})).kind() == PolygonKind::Empty);
}

TEST_CASE("dilated unimodular simplices") {
    CHECK(is_dilated_unimodular_simplex(poly({{0, 0}, {3, 0}, {0, 3}}), 3));
    CHECK(is_dilated_unimodular_simplex(poly({{1, 1}, {3, 3}, {-1, 3}}), 2) == false);
    CHECK(is_dilated_unimodular_simplex(poly({{2, 1}, {2, 4}, {5, 1}}), 3));
    CHECK(is_dilated_unimodular_simplex(poly({{0, 0}, {3, 0}, {3, 3}}), 3));
    CHECK_FALSE(is_dilated_unimodular_simplex(poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}), 2));
}

TEST_CASE("dual of the standard line is a unit triangle") {
    auto dual = dual_subdivision(standard_line());
    CHECK(dual.newton.twice_area() == 1);
    REQUIRE(dual.cells.size() == 1);
    CHECK(dual.cells[0].kind == CellKind::Triangle);
    CHECK(dual.region_slopes.size() == 3);
    auto r = verify_identities(standard_line());
    CHECK(r.all());
    CHECK(r.genus_node.holds);
    CHECK(r.genus_node.interior == 0);
    CHECK(r.genus_node.genus == 0);
}

TEST_CASE("a single node is dual to a unit square") {
    auto dual = dual_subdivision(crossing_lines());
    REQUIRE(dual.cells.size() == 1);
    CHECK(dual.cells[0].kind == CellKind::Parallelogram);
    CHECK(dual.cells[0].multiplicity == 1);
    CHECK(dual.newton.twice_area() == 2);
    CHECK(dual.newton.vertices().size() == 4);
    auto r = verify_identities(crossing_lines());
    CHECK(r.all());
    CHECK(r.genus_node.genus == -1);
    CHECK(r.genus_node.nodes == 1);
    CHECK(r.genus_node.holds);
}

TEST_CASE("equal theta representative: three interior points") {
    auto rep = plane_representative(parse_family_spec({"theta", "a=1", "b=1", "c=1"}));
    auto r = verify_identities(rep.curve);
    CHECK(r.interior == 3);
    CHECK(r.genus_node.genus == 2);
    CHECK(r.genus_node.nodes == 1);
    CHECK(r.all());
    auto dual = dual_subdivision(rep.curve);
    int squares = 0;
    for (const auto& cell : dual.cells)
        if (cell.kind == CellKind::Parallelogram) ++squares;
    CHECK(squares == 1);
}

TEST_CASE("smooth theta embeddings have two interior points") {
    for (auto spec : {std::vector<std::string>{"theta", "a=1", "b=2", "c=3"}, {"theta", "a=1", "b=1", "c=2"}}) {
        auto rep = plane_representative(parse_family_spec(spec));
        auto r = verify_identities(rep.curve);
        CHECK(r.interior == 2);
        CHECK(r.genus_node.nodes == 0);
        CHECK(r.all());
        auto lp = lattice_points(dual_subdivision(rep.curve).newton);
        auto n = normalize_genus2_polygon(dual_subdivision(rep.curve).newton);
        CHECK(satisfies_genus2_form(n.polygon, 1));
        CHECK(lp.interior.size() == 2);
    }
}

TEST_CASE("property: identities on builder output") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 6; ++round) {
        auto c = random_cubic(rng, 4);
        auto im = build_immersion(c, round);
        auto r = verify_identities(im.curve);
        CHECK(r.genus_node.holds);
        CHECK(r.genus_node.genus == c.genus());
        CHECK(r.all());
    }
}

TEST_CASE("Scott regime") {
    CHECK(scott_check(2, 10));
    CHECK_FALSE(scott_check(2, 11));
    CHECK(scott_check(4, 14));
    CHECK_THROWS_AS(scott_check(0, 9), Error);
}

TEST_CASE("gonality crossing bound") {
    CHECK(gonality_crossing_lower_bound(3, 2) == 0);
    CHECK(gonality_crossing_lower_bound(9, 15) == 4);
    CHECK_THROWS_AS(gonality_crossing_lower_bound(2, 0), Error);
    auto expr = chain_of_loops_crossing_expression(15);
    CHECK(expr > 0);
    CHECK(expr == q(3 * 225, 32) - q(11 * 15, 8) + q(7, 8));
    CHECK(chain_of_loops_crossing_bound(15) == 2);
    CHECK(chain_of_loops_crossing_bound(3) == 0);
}

TEST_CASE("sun bound") {
    CHECK(sun_lower_bound(14) == 3);
    CHECK(sun_lower_bound(9) == 0);
    CHECK(sun_lower_bound(20) == 6);
    CHECK(sun_lower_bound(15) == 4);
}

TEST_CASE("genus-2 normal form") {
    auto rep = plane_representative(parse_family_spec({"theta", "a=1", "b=2", "c=3"}));
    auto base = normalize_genus2_polygon(dual_subdivision(rep.curve).newton).polygon;
    REQUIRE(satisfies_genus2_form(base, 1));
    auto again = normalize_genus2_polygon(base);
    CHECK(again.map == AffineUnimodular::identity());
    CHECK(again.polygon == base);

    AffineUnimodular shear{1, 3, 0, 1, 0, 0};
    auto sheared = transform(base, shear);
    CHECK(normalize_genus2_polygon(sheared).polygon == base);

    AffineUnimodular wild{2, 1, 1, 1, -4, 7};
    auto moved = transform(base, wild);
    auto back = normalize_genus2_polygon(moved);
    CHECK(satisfies_genus2_form(back.polygon, 1));
    CHECK(transform(moved, back.map) == back.polygon);
    auto two = normalize_genus2_polygon(moved, 2);
    CHECK(satisfies_genus2_form(two.polygon, 2));

    CHECK_THROWS_AS(normalize_genus2_polygon(poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}})), Error);
}

TEST_CASE("affine maps compose") {
    AffineUnimodular a{1, 2, 0, 1, 3, -1}, b{0, 1, -1, 0, 2, 2};
    LatticePoint p{4, -7};
    CHECK(a.then(b).apply(p) == b.apply(a.apply(p)));
}

}
