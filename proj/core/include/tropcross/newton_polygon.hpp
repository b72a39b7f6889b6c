#pragma once

#include "tropcross/plane_curve.hpp"
#include "tropcross/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace tropcross {

using LatticePoint = std::array<std::int64_t, 2>;

enum class PolygonKind { Empty, Point, Segment, Polygon };

// Convex hull vertices in counterclockwise order, collinear points dropped.
class LatticePolygon {
public:
    LatticePolygon() = default;
    static LatticePolygon hull_of(std::vector<LatticePoint> points);

    const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
    PolygonKind kind() const noexcept;
    std::int64_t twice_area() const;
    Rational area() const { return Rational(twice_area(), 2); }

    friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;

private:
    std::vector<LatticePoint> vertices_;
};

struct LatticePointSets {
    std::vector<LatticePoint> interior;
    std::vector<LatticePoint> boundary;
};
LatticePointSets lattice_points(const LatticePolygon& p);

struct PickCheck {
    bool holds = false;
    Rational area;
    std::int64_t total = 0;  // all lattice points, boundary included
    std::int64_t boundary = 0;
};
// Throws Error(Precondition) on a degenerate polygon.
PickCheck pick_verify(const LatticePolygon& p);

struct LatticeWidth {
    std::int64_t width = 0;
    LatticePoint direction{};
};
// Exhaustive over primitive λ with |λ|∞ <= coordinate diameter; throws on empty input.
LatticeWidth lattice_width(const LatticePolygon& p);

// Δ⁽¹⁾; degenerate results carry their kind.
LatticePolygon interior_hull(const LatticePolygon& p);

// True when p is unimodularly equivalent to conv{0, k·e1, k·e2}.
bool is_dilated_unimodular_simplex(const LatticePolygon& p, std::int64_t k);

enum class CellKind { Triangle, Parallelogram };

struct DualCell {
    std::vector<LatticePoint> verts;  // counterclockwise
    std::size_t dual_vertex = 0;
    CellKind kind = CellKind::Triangle;
    std::int64_t multiplicity = 1;  // parallelograms: node multiplicity
};

struct DualEdge {
    bool is_ray = false;
    std::size_t element = 0;
    LatticePoint left{}, right{};
};

struct DualSubdivision {
    LatticePolygon newton;
    std::vector<LatticePoint> region_slopes;  // one per complement region
    std::vector<bool> region_bounded;
    std::vector<DualCell> cells;
    std::vector<DualEdge> edges;
};

// Throws Error(Validation) on an invalid curve or inconsistent slope integration.
DualSubdivision dual_subdivision(const PlaneTropicalCurve& curve);

struct GenusNodeCheck {
    bool holds = false;
    std::int64_t interior = 0;
    int genus = 0;
    std::int64_t nodes = 0;
};
GenusNodeCheck verify_genus_node_identity(const PlaneTropicalCurve& curve);

// One entry per identity checked on a plane curve and its dual subdivision.
struct IdentityReport {
    GenusNodeCheck genus_node;
    bool pick_newton = false;
    bool pick_cells = false;
    bool cell_counts = false;       // triangles = smooth vertices, parallelograms = nodes
    bool parallelograms = false;    // area m, m−1 interior points
    bool cells_tile = false;        // cell areas sum to the area of Δ
    bool primitive_edges = false;   // no lattice point inside a dual edge
    bool bounded_regions = false;   // interior subdivision vertices = bounded regions
    std::int64_t interior = 0;
    std::int64_t boundary = 0;
    Rational area;
    LatticeWidth width;

    bool all() const;
};
IdentityReport verify_identities(const PlaneTropicalCurve& curve);

// Requires b > 9.
bool scott_check(std::int64_t interior, std::int64_t boundary);

// max(0, ⌈3(d−2)²/8 − g + 1/2⌉); requires d > 2.
std::int64_t gonality_crossing_lower_bound(std::int64_t d, std::int64_t g);
// 3g²/32 − 11g/8 + 7/8, the chain-of-loops specialization before rounding.
Rational chain_of_loops_crossing_expression(std::int64_t g);
std::int64_t chain_of_loops_crossing_bound(std::int64_t g);

// ⌈n/2⌉ − 4 for n > 9, else 0.
std::int64_t sun_lower_bound(std::int64_t n);

// x' = a·x + b·y + tx, y' = c·x + d·y + ty, with ad − bc = ±1.
struct AffineUnimodular {
    std::int64_t a = 1, b = 0, c = 0, d = 1, tx = 0, ty = 0;

    LatticePoint apply(const LatticePoint& p) const;
    AffineUnimodular then(const AffineUnimodular& next) const;
    static AffineUnimodular identity() { return {}; }
    friend bool operator==(const AffineUnimodular&, const AffineUnimodular&) = default;
};
LatticePolygon transform(const LatticePolygon& p, const AffineUnimodular& t);

struct Genus2Normalization {
    AffineUnimodular map;
    LatticePolygon polygon;
    int form = 1;
};
// Interior points go to (0,0),(1,0); form 1: −1<=y<=1, x<=2; form 2: −1<=y<=1, x>=−1.
Genus2Normalization normalize_genus2_polygon(const LatticePolygon& p, int form = 1);
bool satisfies_genus2_form(const LatticePolygon& p, int form);

}  // namespace tropcross
