#include "tropcross/plane_curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <numeric>
#include <optional>

namespace tropcross {

std::int64_t det(const Dir2& a, const Dir2& b) { return a[0] * b[1] - a[1] * b[0]; }
Dir2 neg(const Dir2& a) { return {-a[0], -a[1]}; }

LatticeDisplacement lattice_displacement(const std::vector<Rational>& from, const std::vector<Rational>& to) {
    if (from.size() != to.size()) fail(ErrorKind::Precondition, "dimension mismatch");
    std::vector<Rational> d(from.size());
    BigInt den = 1;
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = to[i] - from[i];
        den = lcm_of(den, denominator(d[i]));
    }
    std::vector<BigInt> w(d.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        w[i] = numerator(d[i]) * (den / denominator(d[i]));
        g = boost::multiprecision::gcd(g, w[i] < 0 ? BigInt(-w[i]) : w[i]);
    }
    if (g == 0) fail(ErrorKind::Precondition, "lattice length of coincident points");
    LatticeDisplacement out;
    out.length = Rational(g, den);
    out.dir.resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out.dir[i] = to_int64(w[i] / g);
    return out;
}

Rational lattice_length(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    return lattice_displacement(p, q).length;
}

std::int64_t node_multiplicity(const Dir2& u, const Dir2& v) {
    auto d = det(u, v);
    if (d == 0) fail(ErrorKind::Precondition, "node_multiplicity of parallel directions");
    return d < 0 ? -d : d;
}

std::string to_string(VertexKind k) {
    switch (k) {
        case VertexKind::Smooth: return "smooth";
        case VertexKind::Subdivision: return "subdivision";
        case VertexKind::Node: return "node";
        case VertexKind::Invalid: return "invalid";
    }
    return "?";
}

std::string to_string(InvalidReason r) {
    switch (r) {
        case InvalidReason::None: return "none";
        case InvalidReason::Valence: return "valence";
        case InvalidReason::Unbalanced: return "unbalanced";
        case InvalidReason::NonUnimodular: return "non-unimodular";
    }
    return "?";
}

namespace {

Rational dot(const Point2& p, const Dir2& d) { return p[0] * d[0] + p[1] * d[1]; }
Point2 sub(const Point2& p, const Point2& q) { return {p[0] - q[0], p[1] - q[1]}; }
Point2 along(const Point2& p, const Dir2& d, const Rational& t) { return {p[0] + t * d[0], p[1] + t * d[1]}; }
Rational cross(const Point2& p, const Dir2& d) { return p[0] * d[1] - p[1] * d[0]; }

struct Element {
    Point2 p;
    Dir2 d{};
    std::optional<Rational> end;  // absent for rays
    std::vector<Rational> cuts;
    double lo[2], hi[2];  // loose double bounds, rays unbounded in their direction
    double fp[2], fend = 0;
};

// Loose tolerance for double prefilters; every accepted case is decided exactly.
double slack(double a, double b) { return 1e-7 * (1 + std::abs(a) + std::abs(b)); }

bool inside_open(const Element& e, const Rational& t) { return t > 0 && (!e.end || t < *e.end); }
bool inside_closed(const Element& e, const Rational& t) { return t >= 0 && (!e.end || t <= *e.end); }

void set_bounds(Element& e) {
    e.fp[0] = to_double(e.p[0]);
    e.fp[1] = to_double(e.p[1]);
    if (e.end) e.fend = to_double(*e.end);
    for (int k = 0; k < 2; ++k) {
        double a = to_double(e.p[k]);
        double b = e.end ? to_double(e.p[k] + *e.end * e.d[k]) : (e.d[k] > 0 ? 1e300 : (e.d[k] < 0 ? -1e300 : a));
        e.lo[k] = std::min(a, b) - 1e-9 * (1 + std::abs(a));
        e.hi[k] = std::max(a, b) + 1e-9 * (1 + std::abs(a));
    }
}

bool boxes_meet(const Element& a, const Element& b) {
    for (int k = 0; k < 2; ++k)
        if (a.hi[k] < b.lo[k] || b.hi[k] < a.lo[k]) return false;
    return true;
}

void overlap_error() { fail(ErrorKind::Validation, "collinear overlapping segments in arrangement"); }

// True when doubles already show the two lines meet outside both parameter ranges.
bool clearly_apart(const Element& a, const Element& b, std::int64_t dd) {
    double qx = b.fp[0] - a.fp[0], qy = b.fp[1] - a.fp[1];
    double t = (qx * b.d[1] - qy * b.d[0]) / static_cast<double>(dd);
    double s = (qx * a.d[1] - qy * a.d[0]) / static_cast<double>(dd);
    double tol = slack(qx, qy) * (1 + std::abs(t) + std::abs(s));
    if (t < -tol || s < -tol) return true;
    if (a.end && t > a.fend + tol) return true;
    if (b.end && s > b.fend + tol) return true;
    return false;
}

void intersect(Element& a, Element& b) {
    auto dd = det(a.d, b.d);
    if (dd != 0 && clearly_apart(a, b, dd)) return;
    Point2 qp = sub(b.p, a.p);
    if (dd != 0) {
        Rational t = cross(qp, b.d) / dd;
        Rational s = cross(qp, a.d) / dd;
        if (!inside_closed(a, t) || !inside_closed(b, s)) return;
        if (inside_open(a, t)) a.cuts.push_back(t);
        if (inside_open(b, s)) b.cuts.push_back(s);
        return;
    }
    if (cross(qp, a.d) != 0) return;
    // Collinear: b's parameter range mapped into a's.
    Rational dd2 = a.d[0] * a.d[0] + a.d[1] * a.d[1];
    Rational t0 = dot(qp, a.d) / dd2;
    int orient = (a.d == b.d) ? 1 : -1;
    // Intervals [alo, ahi] and [blo, bhi] on a's line, infinite ends as nullopt.
    std::optional<Rational> alo = Rational(0), ahi = a.end;
    std::optional<Rational> blo, bhi;
    if (orient == 1) {
        blo = t0;
        if (b.end) bhi = t0 + *b.end;
    } else {
        bhi = t0;
        if (b.end) blo = t0 - *b.end;
    }
    // Overlap lower = max(alo, blo), upper = min(ahi, bhi).
    Rational lower = blo ? std::max(*alo, *blo) : *alo;
    std::optional<Rational> upper;
    if (ahi && bhi)
        upper = std::min(*ahi, *bhi);
    else if (ahi)
        upper = ahi;
    else if (bhi)
        upper = bhi;
    if (!upper || *upper > lower) overlap_error();
}

}  // namespace

PlaneTropicalCurve PlaneTropicalCurve::from_arrangement(
    const std::vector<Point2>& points, const std::vector<std::pair<std::size_t, std::size_t>>& segments,
    const std::vector<PlaneRay>& rays) {
    std::vector<Element> elems;
    elems.reserve(segments.size() + rays.size());
    for (auto [i, j] : segments) {
        if (i >= points.size() || j >= points.size()) fail(ErrorKind::Validation, "segment references unknown point");
        if (points[i] == points[j]) fail(ErrorKind::Validation, "zero-length segment");
        auto disp = lattice_displacement({points[i][0], points[i][1]}, {points[j][0], points[j][1]});
        Element e;
        e.p = points[i];
        e.d = {disp.dir[0], disp.dir[1]};
        e.end = disp.length;
        elems.push_back(std::move(e));
    }
    for (const PlaneRay& r : rays) {
        if (r.base >= points.size()) fail(ErrorKind::Validation, "ray references unknown point");
        if (gcd_of({r.dir[0], r.dir[1]}) != 1) fail(ErrorKind::Validation, "ray direction is not primitive");
        Element e;
        e.p = points[r.base];
        e.d = r.dir;
        elems.push_back(std::move(e));
    }
    for (auto& e : elems) set_bounds(e);

    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            if (boxes_meet(elems[i], elems[j])) intersect(elems[i], elems[j]);
    for (const Point2& x : points) {
        double fx = to_double(x[0]), fy = to_double(x[1]);
        for (auto& e : elems) {
            double c = (fx - e.fp[0]) * e.d[1] - (fy - e.fp[1]) * e.d[0];
            if (std::abs(c) > slack(fx - e.fp[0], fy - e.fp[1]) * (1 + std::abs(e.d[0]) + std::abs(e.d[1]))) continue;
            Point2 xp = sub(x, e.p);
            if (cross(xp, e.d) != 0) continue;
            Rational t = dot(xp, e.d) / Rational(e.d[0] * e.d[0] + e.d[1] * e.d[1]);
            if (inside_open(e, t)) e.cuts.push_back(t);
        }
    }

    PlaneTropicalCurve c;
    std::map<Point2, std::size_t> index;
    auto vertex = [&](const Point2& p) {
        auto [it, fresh] = index.emplace(p, c.points_.size());
        if (fresh) c.points_.push_back(p);
        return it->second;
    };
    for (const Point2& p : points) vertex(p);
    for (auto& e : elems) {
        std::sort(e.cuts.begin(), e.cuts.end());
        e.cuts.erase(std::unique(e.cuts.begin(), e.cuts.end()), e.cuts.end());
        Rational prev = 0;
        std::size_t prev_v = vertex(e.p);
        for (const Rational& t : e.cuts) {
            std::size_t v = vertex(along(e.p, e.d, t));
            c.segments_.push_back({prev_v, v, e.d, t - prev});
            prev = t;
            prev_v = v;
        }
        if (e.end)
            c.segments_.push_back({prev_v, vertex(along(e.p, e.d, *e.end)), e.d, *e.end - prev});
        else
            c.rays_.push_back({prev_v, e.d});
    }
    c.build_star();
    return c;
}

void PlaneTropicalCurve::build_star() {
    star_.assign(points_.size(), {});
    for (std::size_t s = 0; s < segments_.size(); ++s) {
        star_[segments_[s].a].push_back({false, s, segments_[s].dir});
        star_[segments_[s].b].push_back({false, s, neg(segments_[s].dir)});
    }
    for (std::size_t r = 0; r < rays_.size(); ++r) star_[rays_[r].base].push_back({true, r, rays_[r].dir});
}

VertexClass classify_vertex(const PlaneTropicalCurve& curve, std::size_t v) {
    const auto& hs = curve.half_edges(v);
    VertexClass out;
    out.valence = static_cast<int>(hs.size());
    Dir2 sum{0, 0};
    for (const auto& h : hs) {
        sum[0] += h.dir[0];
        sum[1] += h.dir[1];
    }
    switch (hs.size()) {
        case 2:
            if (hs[0].dir == neg(hs[1].dir)) {
                out.kind = VertexKind::Subdivision;
                return out;
            }
            out.reason = InvalidReason::Unbalanced;
            return out;
        case 3: {
            if (sum != Dir2{0, 0}) {
                out.reason = InvalidReason::Unbalanced;
                return out;
            }
            auto d = det(hs[0].dir, hs[1].dir);
            if (d != 1 && d != -1) {
                out.reason = InvalidReason::NonUnimodular;
                return out;
            }
            out.kind = VertexKind::Smooth;
            return out;
        }
        case 4: {
            // Pair each direction with its opposite.
            std::size_t partner = 4;
            for (std::size_t k = 1; k < 4; ++k)
                if (hs[k].dir == neg(hs[0].dir)) partner = k;
            if (partner == 4) {
                out.reason = InvalidReason::Unbalanced;
                return out;
            }
            std::size_t rest[2], r = 0;
            for (std::size_t k = 1; k < 4; ++k)
                if (k != partner) rest[r++] = k;
            if (hs[rest[0]].dir != neg(hs[rest[1]].dir)) {
                out.reason = InvalidReason::Unbalanced;
                return out;
            }
            auto m = det(hs[0].dir, hs[rest[0]].dir);
            if (m == 0) {
                out.reason = InvalidReason::Valence;
                return out;
            }
            out.kind = VertexKind::Node;
            out.multiplicity = m < 0 ? -m : m;
            return out;
        }
        default:
            out.reason = InvalidReason::Valence;
            return out;
    }
}

void validate(const PlaneTropicalCurve& curve) {
    for (std::size_t v = 0; v < curve.num_vertices(); ++v) {
        auto c = classify_vertex(curve, v);
        if (c.kind == VertexKind::Invalid)
            fail(ErrorKind::Validation, "vertex " + std::to_string(v) + " (" + to_string(curve.points()[v][0]) + "," +
                                            to_string(curve.points()[v][1]) + ") is invalid: " + to_string(c.reason));
    }
}

bool is_valid(const PlaneTropicalCurve& curve) {
    for (std::size_t v = 0; v < curve.num_vertices(); ++v)
        if (classify_vertex(curve, v).kind == VertexKind::Invalid) return false;
    return true;
}

std::vector<NodeInfo> nodes(const PlaneTropicalCurve& curve) {
    std::vector<NodeInfo> out;
    for (std::size_t v = 0; v < curve.num_vertices(); ++v) {
        auto c = classify_vertex(curve, v);
        if (c.kind == VertexKind::Node) out.push_back({v, c.multiplicity});
    }
    return out;
}

std::int64_t total_crossings(const PlaneTropicalCurve& curve) {
    validate(curve);
    std::int64_t total = 0;
    for (const auto& n : nodes(curve)) total += n.multiplicity;
    return total;
}

VertexId Resolution::vertex_for(std::size_t plane_vertex, const Dir2& outgoing) const {
    for (const auto& [d, id] : vertex_ids.at(plane_vertex))
        if (d == outgoing) return id;
    fail(ErrorKind::Precondition, "no half-edge with that direction at plane vertex " + std::to_string(plane_vertex));
}

int Resolution::genus() const {
    int g = 1;
    for (const auto& c : components) g += static_cast<int>(c.edges().size()) - static_cast<int>(c.vertices().size());
    return g;
}

Resolution resolve_nodes(const PlaneTropicalCurve& curve) {
    validate(curve);
    Resolution res;
    VertexId next = 0;
    res.vertex_ids.resize(curve.num_vertices());
    for (std::size_t v = 0; v < curve.num_vertices(); ++v) {
        const auto& hs = curve.half_edges(v);
        auto cls = classify_vertex(curve, v);
        VertexId first = next++;
        if (cls.kind == VertexKind::Node) {
            VertexId second = next++;
            for (const auto& h : hs) {
                bool same_line = det(h.dir, hs[0].dir) == 0;
                res.vertex_ids[v].push_back({h.dir, same_line ? first : second});
            }
        } else {
            for (const auto& h : hs) res.vertex_ids[v].push_back({h.dir, first});
        }
    }

    struct RawEdge {
        VertexId u, v;
        Length len;
    };
    std::vector<RawEdge> raw;
    std::set<VertexId> infinite;
    for (const auto& s : curve.segments())
        raw.push_back({res.vertex_for(s.a, s.dir), res.vertex_for(s.b, neg(s.dir)), Length(s.length)});
    for (const auto& r : curve.rays()) {
        VertexId leaf = next++;
        infinite.insert(leaf);
        raw.push_back({res.vertex_for(r.base, r.dir), leaf, Length::infinite()});
    }

    std::vector<VertexId> parent(static_cast<std::size_t>(next));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<VertexId(VertexId)> find = [&](VertexId x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::set<VertexId> used;
    for (const auto& e : raw) {
        parent[find(e.u)] = find(e.v);
        used.insert(e.u);
        used.insert(e.v);
    }
    for (std::size_t v = 0; v < curve.num_vertices(); ++v)
        for (const auto& [d, id] : res.vertex_ids[v]) used.insert(id);
    // Isolated plane vertices (no half-edges) still form components.
    for (std::size_t v = 0; v < curve.num_vertices(); ++v)
        if (res.vertex_ids[v].empty()) fail(ErrorKind::Validation, "isolated plane vertex");

    std::map<VertexId, std::size_t> comp_index;
    std::vector<std::vector<VertexId>> comp_vertices;
    for (VertexId x = 0; x < next; ++x) {
        if (!used.count(x)) continue;
        auto root = find(x);
        auto [it, fresh] = comp_index.emplace(root, comp_vertices.size());
        if (fresh) comp_vertices.emplace_back();
        comp_vertices[it->second].push_back(x);
        res.component_of[x] = it->second;
    }
    std::vector<std::vector<Edge>> comp_edges(comp_vertices.size());
    std::vector<ResolvedEdge> placement;
    for (const auto& e : raw) {
        auto c = res.component_of[e.u];
        placement.push_back({c, comp_edges[c].size()});
        comp_edges[c].push_back({e.u, e.v, e.len});
    }
    res.segment_edge.assign(placement.begin(), placement.begin() + static_cast<long>(curve.segments().size()));
    res.ray_edge.assign(placement.begin() + static_cast<long>(curve.segments().size()), placement.end());
    for (std::size_t c = 0; c < comp_vertices.size(); ++c) {
        std::set<VertexId> inf;
        for (auto x : comp_vertices[c])
            if (infinite.count(x)) inf.insert(x);
        res.components.emplace_back(comp_vertices[c], comp_edges[c], inf);
    }
    return res;
}

bool is_immersion_of(const PlaneTropicalCurve& curve, const AbstractTropicalCurve& target) {
    auto res = resolve_nodes(curve);
    if (res.components.size() != 1) return false;
    return equivalent(res.components[0], target, true);
}

bool is_strict_immersion_of(const PlaneTropicalCurve& curve, const AbstractTropicalCurve& target) {
    auto res = resolve_nodes(curve);
    if (res.components.size() != 1) return false;
    return equivalent(res.components[0], target, false);
}

std::int64_t LineSection::degree() const {
    std::int64_t d = 0;
    for (const auto& t : terms) d += t.multiplicity;
    return d;
}

Divisor LineSection::on_component(std::size_t component) const {
    Divisor d;
    for (const auto& t : terms)
        if (t.component == component) d.terms.push_back({t.point, t.multiplicity});
    return d;
}

LineSection stable_intersection_with_line(const PlaneTropicalCurve& curve, const Dir2& lambda, const Rational& a) {
    if (gcd_of({lambda[0], lambda[1]}) != 1) fail(ErrorKind::Precondition, "line normal must be primitive");
    LineSection out;
    out.resolution = resolve_nodes(curve);
    const Resolution& res = out.resolution;
    auto level = [&](std::size_t v) { return dot(curve.points()[v], lambda) - a; };

    bool contained = true;
    for (std::size_t v = 0; v < curve.num_vertices() && contained; ++v)
        if (level(v) != 0) contained = false;
    for (const auto& r : curve.rays())
        if (r.dir[0] * lambda[0] + r.dir[1] * lambda[1] != 0) contained = false;
    if (contained) fail(ErrorKind::Precondition, "curve lies in the line");

    std::map<VertexId, std::int64_t> at_vertex;
    for (std::size_t v = 0; v < curve.num_vertices(); ++v) {
        if (level(v) != 0) continue;
        for (const auto& h : curve.half_edges(v)) {
            auto slope = h.dir[0] * lambda[0] + h.dir[1] * lambda[1];
            if (slope > 0) at_vertex[res.vertex_for(v, h.dir)] += slope;
        }
    }
    for (const auto& [id, m] : at_vertex)
        out.terms.push_back({res.component_of.at(id), CurvePoint::at_vertex(id), m});

    for (std::size_t s = 0; s < curve.segments().size(); ++s) {
        const auto& seg = curve.segments()[s];
        Rational fa = level(seg.a), fb = level(seg.b);
        if (fa == 0 || fb == 0 || (fa > 0) == (fb > 0)) continue;
        auto slope = seg.dir[0] * lambda[0] + seg.dir[1] * lambda[1];
        Rational t = -fa / slope;
        const auto& re = res.segment_edge[s];
        out.terms.push_back({re.component, CurvePoint::at_edge(re.edge, t), slope < 0 ? -slope : slope});
    }
    for (std::size_t r = 0; r < curve.rays().size(); ++r) {
        const auto& ray = curve.rays()[r];
        Rational fb = level(ray.base);
        auto slope = ray.dir[0] * lambda[0] + ray.dir[1] * lambda[1];
        if (fb == 0 || slope == 0 || (fb > 0) == (slope > 0)) continue;
        Rational t = -fb / slope;
        const auto& re = res.ray_edge[r];
        out.terms.push_back({re.component, CurvePoint::at_edge(re.edge, t), slope < 0 ? -slope : slope});
    }
    return out;
}

}  // namespace tropcross
