#include "tropcross/newton_polygon.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace tropcross {

namespace {

std::int64_t cross3(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

}  // namespace

LatticePolygon LatticePolygon::hull_of(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    LatticePolygon out;
    if (pts.size() <= 2) {
        out.vertices_ = pts;
        return out;
    }
    std::vector<LatticePoint> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross3(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        const auto& p = pts[i - 1];
        while (k >= t && cross3(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    h.resize(k - 1);
    out.vertices_ = h;
    return out;
}

PolygonKind LatticePolygon::kind() const noexcept {
    switch (vertices_.size()) {
        case 0: return PolygonKind::Empty;
        case 1: return PolygonKind::Point;
        case 2: return PolygonKind::Segment;
        default: return PolygonKind::Polygon;
    }
}

std::int64_t LatticePolygon::twice_area() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& p = vertices_[i];
        const auto& q = vertices_[(i + 1) % vertices_.size()];
        s += p[0] * q[1] - p[1] * q[0];
    }
    return s;
}

LatticePointSets lattice_points(const LatticePolygon& p) {
    LatticePointSets out;
    const auto& v = p.vertices();
    if (v.empty()) return out;
    std::int64_t x0 = v[0][0], x1 = x0, y0 = v[0][1], y1 = y0;
    for (const auto& q : v) {
        x0 = std::min(x0, q[0]);
        x1 = std::max(x1, q[0]);
        y0 = std::min(y0, q[1]);
        y1 = std::max(y1, q[1]);
    }
    for (std::int64_t x = x0; x <= x1; ++x)
        for (std::int64_t y = y0; y <= y1; ++y) {
            LatticePoint q{x, y};
            if (v.size() == 1) {
                out.boundary.push_back(q);
                continue;
            }
            if (v.size() == 2) {
                if (cross3(v[0], v[1], q) == 0) out.boundary.push_back(q);
                continue;
            }
            bool on_edge = false, outside = false;
            for (std::size_t i = 0; i < v.size(); ++i) {
                auto c = cross3(v[i], v[(i + 1) % v.size()], q);
                if (c < 0) outside = true;
                if (c == 0) on_edge = true;
            }
            if (outside) continue;
            (on_edge ? out.boundary : out.interior).push_back(q);
        }
    return out;
}

PickCheck pick_verify(const LatticePolygon& p) {
    if (p.kind() != PolygonKind::Polygon) fail(ErrorKind::Precondition, "pick_verify needs a two-dimensional polygon");
    auto sets = lattice_points(p);
    PickCheck out;
    out.area = p.area();
    out.boundary = static_cast<std::int64_t>(sets.boundary.size());
    out.total = static_cast<std::int64_t>(sets.interior.size()) + out.boundary;
    out.holds = out.area == Rational(out.total) - Rational(out.boundary, 2) - 1;
    return out;
}

LatticeWidth lattice_width(const LatticePolygon& p) {
    const auto& v = p.vertices();
    if (v.empty()) fail(ErrorKind::Precondition, "lattice_width of an empty polygon");
    std::int64_t x0 = v[0][0], x1 = x0, y0 = v[0][1], y1 = y0;
    for (const auto& q : v) {
        x0 = std::min(x0, q[0]);
        x1 = std::max(x1, q[0]);
        y0 = std::min(y0, q[1]);
        y1 = std::max(y1, q[1]);
    }
    std::int64_t bound = std::max<std::int64_t>({1, x1 - x0, y1 - y0});
    std::optional<LatticeWidth> best;
    for (std::int64_t r = 1; r <= bound; ++r)
        for (std::int64_t a = 0; a <= r; ++a)
            for (std::int64_t b = -r; b <= r; ++b) {
                if (std::max(a, iabs(b)) != r || std::gcd(a, b) != 1) continue;
                if (a == 0 && b < 0) continue;
                std::int64_t lo = a * v[0][0] + b * v[0][1], hi = lo;
                for (const auto& q : v) {
                    lo = std::min(lo, a * q[0] + b * q[1]);
                    hi = std::max(hi, a * q[0] + b * q[1]);
                }
                if (!best || hi - lo < best->width) best = LatticeWidth{hi - lo, {a, b}};
            }
    return *best;
}

LatticePolygon interior_hull(const LatticePolygon& p) {
    if (p.kind() != PolygonKind::Polygon) return {};
    return LatticePolygon::hull_of(lattice_points(p).interior);
}

bool is_dilated_unimodular_simplex(const LatticePolygon& p, std::int64_t k) {
    if (k == 0) return p.kind() == PolygonKind::Point;
    if (p.vertices().size() != 3) return false;
    const auto& v = p.vertices();
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % 3];
        if (std::gcd(b[0] - a[0], b[1] - a[1]) != k) return false;
    }
    return p.twice_area() == k * k;
}

namespace {

int half_plane(const Dir2& d) { return (d[1] > 0 || (d[1] == 0 && d[0] > 0)) ? 0 : 1; }

bool ccw_less(const Dir2& a, const Dir2& b) {
    int ha = half_plane(a), hb = half_plane(b);
    if (ha != hb) return ha < hb;
    return det(a, b) > 0;
}

enum class Owner { Segment, Ray, Box };

struct Half {
    std::size_t from = 0, to = 0;
    Dir2 dir{};
    Owner owner = Owner::Box;
    std::size_t element = 0;
    std::size_t twin = 0, next = 0, face = 0;
};

}  // namespace

DualSubdivision dual_subdivision(const PlaneTropicalCurve& curve) {
    validate(curve);
    if (curve.rays().empty()) fail(ErrorKind::Validation, "plane curve without rays is not balanced");
    const auto& pts = curve.points();
    Rational x0 = pts[0][0], x1 = x0, y0 = pts[0][1], y1 = y0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    Rational margin = std::max({Rational(1), x1 - x0, y1 - y0});
    x0 -= margin;
    x1 += margin;
    y0 -= margin;
    y1 += margin;
    Rational w = x1 - x0, h = y1 - y0;

    std::vector<Point2> verts(pts.begin(), pts.end());
    std::map<Point2, std::size_t> box_index;
    auto box_vertex = [&](const Point2& p) {
        auto [it, fresh] = box_index.emplace(p, verts.size());
        if (fresh) verts.push_back(p);
        return it->second;
    };
    auto perimeter = [&](const Point2& p) -> Rational {
        if (p[1] == y0) return p[0] - x0;
        if (p[0] == x1) return w + (p[1] - y0);
        if (p[1] == y1) return w + h + (x1 - p[0]);
        return 2 * w + h + (y1 - p[1]);
    };

    std::vector<Half> hs;
    auto add_pair = [&](std::size_t a, std::size_t b, Dir2 d, Owner o, std::size_t el) {
        std::size_t i = hs.size();
        hs.push_back({a, b, d, o, el, i + 1, 0, 0});
        hs.push_back({b, a, neg(d), o, el, i, 0, 0});
    };
    for (std::size_t s = 0; s < curve.segments().size(); ++s) {
        const auto& seg = curve.segments()[s];
        add_pair(seg.a, seg.b, seg.dir, Owner::Segment, s);
    }
    std::size_t bl = box_vertex({x0, y0});
    box_vertex({x1, y0});
    box_vertex({x1, y1});
    box_vertex({x0, y1});
    for (std::size_t r = 0; r < curve.rays().size(); ++r) {
        const auto& ray = curve.rays()[r];
        const Point2& b = pts[ray.base];
        std::optional<Rational> t;
        for (int k = 0; k < 2; ++k) {
            if (ray.dir[k] == 0) continue;
            Rational lim = k == 0 ? (ray.dir[k] > 0 ? x1 : x0) : (ray.dir[k] > 0 ? y1 : y0);
            Rational tk = (lim - b[k]) / ray.dir[k];
            if (!t || tk < *t) t = tk;
        }
        Point2 exit{b[0] + *t * ray.dir[0], b[1] + *t * ray.dir[1]};
        add_pair(ray.base, box_vertex(exit), ray.dir, Owner::Ray, r);
    }
    std::vector<std::pair<Rational, std::size_t>> ring;
    for (const auto& [p, idx] : box_index) ring.push_back({perimeter(p), idx});
    std::sort(ring.begin(), ring.end());
    for (std::size_t k = 0; k < ring.size(); ++k) {
        std::size_t a = ring[k].second, b = ring[(k + 1) % ring.size()].second;
        Dir2 d{0, 0};
        for (int c = 0; c < 2; ++c) {
            int s = sign_of(verts[b][c] - verts[a][c]);
            d[c] = s;
        }
        add_pair(a, b, d, Owner::Box, 0);
    }

    std::vector<std::vector<std::size_t>> out(verts.size());
    for (std::size_t i = 0; i < hs.size(); ++i) out[hs[i].from].push_back(i);
    std::vector<std::size_t> pos(hs.size());
    for (auto& list : out) {
        std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) { return ccw_less(hs[a].dir, hs[b].dir); });
        for (std::size_t k = 0; k < list.size(); ++k) pos[list[k]] = k;
    }
    for (auto& he : hs) {
        const Half& tw = hs[he.twin];
        const auto& list = out[he.to];
        std::size_t k = pos[he.twin];
        static_cast<void>(tw);
        he.next = list[(k + list.size() - 1) % list.size()];
    }
    const std::size_t none = static_cast<std::size_t>(-1);
    for (auto& he : hs) he.face = none;
    std::vector<Rational> face_area;
    std::vector<bool> face_touches_box;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        if (hs[i].face != none) continue;
        std::size_t f = face_area.size();
        Rational twice = 0;
        bool box = false;
        std::size_t j = i;
        do {
            hs[j].face = f;
            const auto& p = verts[hs[j].from];
            const auto& q = verts[hs[j].to];
            twice += p[0] * q[1] - p[1] * q[0];
            if (hs[j].owner == Owner::Box) box = true;
            j = hs[j].next;
        } while (j != i);
        face_area.push_back(twice);
        face_touches_box.push_back(box);
    }

    std::size_t base_half = none;
    for (auto i : out[bl])
        if (hs[i].owner == Owner::Box && hs[i].dir == Dir2{1, 0}) base_half = i;
    std::size_t base = hs[base_half].face;

    std::vector<std::optional<LatticePoint>> slope(face_area.size());
    slope[base] = LatticePoint{0, 0};
    std::vector<std::vector<std::size_t>> face_halves(face_area.size());
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (hs[i].owner != Owner::Box) face_halves[hs[i].face].push_back(i);
    std::deque<std::size_t> queue{base};
    while (!queue.empty()) {
        std::size_t f = queue.front();
        queue.pop_front();
        for (auto i : face_halves[f]) {
            const Half& he = hs[i];
            std::size_t g = hs[he.twin].face;
            LatticePoint s{(*slope[f])[0] + he.dir[1], (*slope[f])[1] - he.dir[0]};
            if (!slope[g]) {
                slope[g] = s;
                queue.push_back(g);
            } else if (*slope[g] != s) {
                fail(ErrorKind::Validation, "inconsistent slope integration around a cycle");
            }
        }
    }

    DualSubdivision ds;
    std::map<std::size_t, std::size_t> region_of_face;
    std::vector<LatticePoint> all;
    for (std::size_t f = 0; f < face_area.size(); ++f) {
        if (face_area[f] <= 0) continue;  // the outside of the box
        if (!slope[f]) fail(ErrorKind::Validation, "complement region not reached by slope integration");
        region_of_face[f] = ds.region_slopes.size();
        ds.region_slopes.push_back(*slope[f]);
        ds.region_bounded.push_back(!face_touches_box[f]);
        all.push_back(*slope[f]);
    }
    ds.newton = LatticePolygon::hull_of(all);

    for (std::size_t v = 0; v < curve.num_vertices(); ++v) {
        auto cls = classify_vertex(curve, v);
        if (cls.kind != VertexKind::Smooth && cls.kind != VertexKind::Node) continue;
        DualCell cell;
        cell.dual_vertex = v;
        cell.kind = cls.kind == VertexKind::Smooth ? CellKind::Triangle : CellKind::Parallelogram;
        cell.multiplicity = cls.kind == VertexKind::Node ? cls.multiplicity : 1;
        for (auto i : out[v]) cell.verts.push_back(*slope[hs[i].face]);
        auto hull = LatticePolygon::hull_of(cell.verts);
        if (hull.vertices().size() != cell.verts.size())
            fail(ErrorKind::Validation, "degenerate dual cell at vertex " + std::to_string(v));
        cell.verts = hull.vertices();
        ds.cells.push_back(std::move(cell));
    }
    for (std::size_t i = 0; i < hs.size(); i += 2) {
        if (hs[i].owner == Owner::Box) continue;
        ds.edges.push_back({hs[i].owner == Owner::Ray, hs[i].element, *slope[hs[i].face], *slope[hs[i + 1].face]});
    }
    return ds;
}

GenusNodeCheck verify_genus_node_identity(const PlaneTropicalCurve& curve) {
    GenusNodeCheck out;
    auto ds = dual_subdivision(curve);
    out.interior = static_cast<std::int64_t>(lattice_points(ds.newton).interior.size());
    out.genus = resolve_nodes(curve).genus();
    out.nodes = total_crossings(curve);
    out.holds = out.interior == out.genus + out.nodes;
    return out;
}

bool IdentityReport::all() const {
    return genus_node.holds && pick_newton && pick_cells && cell_counts && parallelograms && cells_tile &&
           primitive_edges && bounded_regions;
}

IdentityReport verify_identities(const PlaneTropicalCurve& curve) {
    IdentityReport r;
    auto ds = dual_subdivision(curve);
    auto sets = lattice_points(ds.newton);
    r.interior = static_cast<std::int64_t>(sets.interior.size());
    r.boundary = static_cast<std::int64_t>(sets.boundary.size());
    r.area = ds.newton.area();
    r.width = lattice_width(ds.newton);
    r.genus_node.interior = r.interior;
    r.genus_node.genus = resolve_nodes(curve).genus();
    r.genus_node.nodes = total_crossings(curve);
    r.genus_node.holds = r.interior == r.genus_node.genus + r.genus_node.nodes;
    // Pick is vacuous for a one-dimensional Δ.
    r.pick_newton = ds.newton.kind() != PolygonKind::Polygon || pick_verify(ds.newton).holds;

    std::size_t smooth = 0, node_count = 0, triangles = 0, parallelograms = 0;
    for (std::size_t v = 0; v < curve.num_vertices(); ++v) {
        auto k = classify_vertex(curve, v).kind;
        if (k == VertexKind::Smooth) ++smooth;
        if (k == VertexKind::Node) ++node_count;
    }
    r.pick_cells = true;
    r.parallelograms = true;
    std::int64_t cell_area = 0;
    for (const auto& c : ds.cells) {
        auto poly = LatticePolygon::hull_of(c.verts);
        if (!pick_verify(poly).holds) r.pick_cells = false;
        cell_area += poly.twice_area();
        if (c.kind == CellKind::Triangle) {
            ++triangles;
            if (poly.twice_area() != 1) r.pick_cells = false;
        } else {
            ++parallelograms;
            auto interior = static_cast<std::int64_t>(lattice_points(poly).interior.size());
            if (poly.twice_area() != 2 * c.multiplicity || interior != c.multiplicity - 1) r.parallelograms = false;
        }
    }
    r.cell_counts = triangles == smooth && parallelograms == node_count;
    r.cells_tile = cell_area == ds.newton.twice_area();
    r.primitive_edges = std::all_of(ds.edges.begin(), ds.edges.end(), [](const DualEdge& e) {
        return std::gcd(e.left[0] - e.right[0], e.left[1] - e.right[1]) == 1;
    });
    std::set<LatticePoint> interior(sets.interior.begin(), sets.interior.end());
    std::size_t bounded = 0, inner_slopes = 0;
    for (std::size_t k = 0; k < ds.region_slopes.size(); ++k) {
        if (ds.region_bounded[k]) ++bounded;
        if (interior.count(ds.region_slopes[k])) ++inner_slopes;
    }
    r.bounded_regions = bounded == inner_slopes;
    return r;
}

bool scott_check(std::int64_t interior, std::int64_t boundary) {
    if (boundary <= 9) fail(ErrorKind::Precondition, "Scott's inequality is applied only for b > 9");
    return boundary <= 2 * interior + 6;
}

std::int64_t gonality_crossing_lower_bound(std::int64_t d, std::int64_t g) {
    if (d <= 2) fail(ErrorKind::Precondition, "gonality bound needs d > 2");
    Rational v = Rational(3 * (d - 2) * (d - 2), 8) - g + Rational(1, 2);
    auto c = to_int64(ceil_of(v));
    return std::max<std::int64_t>(0, c);
}

Rational chain_of_loops_crossing_expression(std::int64_t g) {
    return Rational(3 * g * g, 32) - Rational(11 * g, 8) + Rational(7, 8);
}

std::int64_t chain_of_loops_crossing_bound(std::int64_t g) {
    return std::max<std::int64_t>(0, to_int64(ceil_of(chain_of_loops_crossing_expression(g))));
}

std::int64_t sun_lower_bound(std::int64_t n) {
    if (n < 1) fail(ErrorKind::Precondition, "sun needs at least one leg");
    return n > 9 ? (n + 1) / 2 - 4 : 0;
}

LatticePoint AffineUnimodular::apply(const LatticePoint& p) const {
    return {a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty};
}

AffineUnimodular AffineUnimodular::then(const AffineUnimodular& n) const {
    AffineUnimodular r;
    r.a = n.a * a + n.b * c;
    r.b = n.a * b + n.b * d;
    r.c = n.c * a + n.d * c;
    r.d = n.c * b + n.d * d;
    r.tx = n.a * tx + n.b * ty + n.tx;
    r.ty = n.c * tx + n.d * ty + n.ty;
    return r;
}

LatticePolygon transform(const LatticePolygon& p, const AffineUnimodular& t) {
    std::vector<LatticePoint> pts;
    for (const auto& v : p.vertices()) pts.push_back(t.apply(v));
    return LatticePolygon::hull_of(pts);
}

namespace {

// Returns (g, s, t) with s·a + t·b = g.
std::array<std::int64_t, 3> ext_gcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return {a < 0 ? -a : a, a < 0 ? -1 : 1, 0};
    auto [g, s, t] = ext_gcd(b, a % b);
    return {g, t, s - (a / b) * t};
}

}  // namespace

Genus2Normalization normalize_genus2_polygon(const LatticePolygon& p, int form) {
    if (form != 1 && form != 2) fail(ErrorKind::Precondition, "genus-2 normal form is 1 or 2");
    auto interior = lattice_points(p).interior;
    if (interior.size() != 2)
        fail(ErrorKind::Precondition, "polygon has " + std::to_string(interior.size()) + " interior points, not 2");
    std::sort(interior.begin(), interior.end());
    LatticePoint p0 = interior[0];
    std::int64_t wx = interior[1][0] - p0[0], wy = interior[1][1] - p0[1];
    // A = [[wx, r],[wy, s]] with det 1, map M = A^{-1}.
    auto [g, s0, t0] = ext_gcd(wx, wy);
    if (g != 1) fail(ErrorKind::Validation, "interior points of a genus-2 polygon must be adjacent lattice points");
    std::int64_t s = s0, r = -t0;  // wx·s − wy·r = s0·wx + t0·wy = 1
    AffineUnimodular m{s, -r, -wy, wx, 0, 0};
    m.tx = -(m.a * p0[0] + m.b * p0[1]);
    m.ty = -(m.c * p0[0] + m.d * p0[1]);
    LatticePolygon q = transform(p, m);
    std::optional<std::int64_t> extreme;
    for (const auto& v : q.vertices()) {
        if (v[1] != 1) continue;
        if (!extreme || (form == 1 ? v[0] > *extreme : v[0] < *extreme)) extreme = v[0];
    }
    if (!extreme) fail(ErrorKind::Validation, "genus-2 polygon has no vertex on the line y = 1");
    std::int64_t k = (form == 1 ? 2 : -1) - *extreme;
    AffineUnimodular shear{1, k, 0, 1, 0, 0};
    Genus2Normalization out;
    out.map = m.then(shear);
    out.polygon = transform(p, out.map);
    out.form = form;
    return out;
}

bool satisfies_genus2_form(const LatticePolygon& p, int form) {
    for (const auto& v : p.vertices()) {
        if (v[1] < -1 || v[1] > 1) return false;
        if (form == 1 && v[0] > 2) return false;
        if (form == 2 && v[0] < -1) return false;
    }
    auto interior = lattice_points(p).interior;
    std::sort(interior.begin(), interior.end());
    return interior == std::vector<LatticePoint>{{0, 0}, {1, 0}};
}

}  // namespace tropcross
