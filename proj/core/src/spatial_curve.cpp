#include "tropcross/spatial_curve.hpp"

#include "tropcross/plane_curve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

namespace tropcross {

namespace {

struct Line {
    PointN p;
    IVec d;
    std::optional<Rational> end;
    std::size_t from = 0, to = 0;  // vertex indices; `to` unused for rays
    std::vector<double> lo, hi;
};

bool meets_box(const Line& a, const Line& b) {
    for (std::size_t k = 0; k < a.lo.size(); ++k)
        if (a.hi[k] < b.lo[k] || b.hi[k] < a.lo[k]) return false;
    return true;
}

// Vertex index at parameter t, or npos.
std::size_t vertex_at(const Line& l, const Rational& t) {
    if (t == 0) return l.from;
    if (l.end && t == *l.end) return l.to;
    return static_cast<std::size_t>(-1);
}

bool in_range(const Line& l, const Rational& t) { return t >= 0 && (!l.end || t <= *l.end); }

// True if the two elements touch anywhere other than a common endpoint vertex.
bool bad_contact(const Line& a, const Line& b) {
    std::size_t n = a.p.size();
    PointN qp(n);
    for (std::size_t k = 0; k < n; ++k) qp[k] = b.p[k] - a.p[k];
    // Find a 2x2 minor of [d | -e] that is nonzero.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::int64_t m = a.d[i] * (-b.d[j]) - a.d[j] * (-b.d[i]);
            if (m == 0) continue;
            // Solve t*d - s*e = qp on coordinates i, j.
            Rational t = (qp[i] * (-b.d[j]) - qp[j] * (-b.d[i])) / m;
            Rational s = (a.d[i] * qp[j] - a.d[j] * qp[i]) / m;
            for (std::size_t k = 0; k < n; ++k)
                if (t * a.d[k] - s * b.d[k] != qp[k]) return false;
            if (!in_range(a, t) || !in_range(b, s)) return false;
            auto va = vertex_at(a, t), vb = vertex_at(b, s);
            return !(va != static_cast<std::size_t>(-1) && va == vb);
        }
    // Parallel directions.
    Rational dd = 0, proj = 0;
    for (std::size_t k = 0; k < n; ++k) {
        dd += a.d[k] * a.d[k];
        proj += qp[k] * a.d[k];
    }
    Rational t0 = proj / dd;
    for (std::size_t k = 0; k < n; ++k)
        if (qp[k] != t0 * a.d[k]) return false;
    int orient = a.d == b.d ? 1 : -1;
    std::optional<Rational> blo, bhi;
    if (orient == 1) {
        blo = t0;
        if (b.end) bhi = t0 + *b.end;
    } else {
        bhi = t0;
        if (b.end) blo = t0 - *b.end;
    }
    Rational lower = blo ? std::max(Rational(0), *blo) : Rational(0);
    std::optional<Rational> upper;
    if (a.end && bhi)
        upper = std::min(*a.end, *bhi);
    else if (a.end)
        upper = a.end;
    else
        upper = bhi;
    if (upper && *upper < lower) return false;
    if (!upper || *upper > lower) return true;
    // Single touching point: fine only if it is a shared vertex.
    auto va = vertex_at(a, lower);
    Rational s = orient == 1 ? lower - t0 : t0 - lower;
    auto vb = vertex_at(b, s);
    return !(va != static_cast<std::size_t>(-1) && va == vb);
}

std::vector<Line> lines_of(const SpatialTropicalCurve& c) {
    std::vector<Line> out;
    auto bounds = [&](Line& l) {
        std::size_t n = l.p.size();
        l.lo.resize(n);
        l.hi.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            double a = to_double(l.p[k]);
            double b = l.end ? to_double(l.p[k] + *l.end * l.d[k]) : (l.d[k] > 0 ? 1e300 : (l.d[k] < 0 ? -1e300 : a));
            l.lo[k] = std::min(a, b) - 1e-9 * (1 + std::abs(a));
            l.hi[k] = std::max(a, b) + 1e-9 * (1 + std::abs(a));
        }
    };
    for (const auto& s : c.segments()) {
        Line l{c.points()[s.a], s.dir, s.length, s.a, s.b, {}, {}};
        bounds(l);
        out.push_back(std::move(l));
    }
    for (const auto& r : c.rays()) {
        Line l{c.points()[r.base], r.dir, std::nullopt, r.base, 0, {}, {}};
        bounds(l);
        out.push_back(std::move(l));
    }
    return out;
}

}  // namespace

SpatialTropicalCurve SpatialTropicalCurve::from_arrangement(
    std::size_t dim, const std::vector<PointN>& points,
    const std::vector<std::pair<std::size_t, std::size_t>>& segments, const std::vector<SpatialRay>& rays) {
    SpatialTropicalCurve c;
    c.dim_ = dim;
    std::map<PointN, std::size_t> index;
    std::vector<std::size_t> remap;
    for (const auto& p : points) {
        if (p.size() != dim) fail(ErrorKind::Validation, "point has wrong dimension");
        auto [it, fresh] = index.emplace(p, c.points_.size());
        if (fresh) c.points_.push_back(p);
        remap.push_back(it->second);
    }
    for (auto [i, j] : segments) {
        if (i >= points.size() || j >= points.size()) fail(ErrorKind::Validation, "segment references unknown point");
        if (remap[i] == remap[j]) fail(ErrorKind::Validation, "zero-length segment");
        auto disp = lattice_displacement(points[i], points[j]);
        c.segments_.push_back({remap[i], remap[j], disp.dir, disp.length});
    }
    for (const auto& r : rays) {
        if (r.base >= points.size()) fail(ErrorKind::Validation, "ray references unknown point");
        if (r.dir.size() != dim || gcd_of(r.dir) != 1) fail(ErrorKind::Validation, "ray direction is not primitive");
        c.rays_.push_back({remap[r.base], r.dir});
    }
    if (!find_contacts(c).empty()) fail(ErrorKind::Validation, "elements intersect away from shared endpoints");
    return c;
}

std::vector<IVec> SpatialTropicalCurve::directions(std::size_t v) const {
    std::vector<IVec> out;
    for (const auto& s : segments_) {
        if (s.a == v) out.push_back(s.dir);
        if (s.b == v) {
            IVec d = s.dir;
            for (auto& x : d) x = -x;
            out.push_back(d);
        }
    }
    for (const auto& r : rays_)
        if (r.base == v) out.push_back(r.dir);
    return out;
}

std::size_t SpatialTropicalCurve::bounded_degree(std::size_t v) const {
    return static_cast<std::size_t>(
        std::count_if(segments_.begin(), segments_.end(), [&](const SpatialSegment& s) { return s.a == v || s.b == v; }));
}

std::vector<ElementContact> find_contacts(const SpatialTropicalCurve& curve) {
    auto lines = lines_of(curve);
    std::vector<ElementContact> out;
    std::size_t ns = curve.segments().size();
    auto ref = [&](std::size_t i) { return i < ns ? ElementRef{false, i} : ElementRef{true, i - ns}; };
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (meets_box(lines[i], lines[j]) && bad_contact(lines[i], lines[j])) out.push_back({ref(i), ref(j)});
    return out;
}

namespace {

BigInt det_of(std::vector<std::vector<Rational>> m) {
    std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            Rational f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return numerator(d);
}

}  // namespace

BigInt maximal_minor_gcd(const std::vector<IVec>& columns, std::size_t dim) {
    std::size_t k = columns.size();
    if (k == 0) return 1;
    if (k > dim) return 0;
    BigInt g = 0;
    std::vector<std::size_t> rows(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) m[r][c] = columns[c][rows[r]];
            BigInt d = det_of(std::move(m));
            g = boost::multiprecision::gcd(g, d < 0 ? BigInt(-d) : d);
            return;
        }
        for (std::size_t r = start; r < dim; ++r) {
            rows[depth] = r;
            rec(r + 1, depth + 1);
        }
    };
    rec(0, 0);
    return g;
}

bool is_smooth_vertex(const SpatialTropicalCurve& curve, std::size_t v) {
    auto dirs = curve.directions(v);
    if (dirs.size() < 2 || dirs.size() > curve.dim() + 1) return false;
    IVec sum(curve.dim(), 0);
    for (const auto& d : dirs)
        for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += d[k];
    if (std::any_of(sum.begin(), sum.end(), [](std::int64_t x) { return x != 0; })) return false;
    dirs.pop_back();
    return maximal_minor_gcd(dirs, curve.dim()) == 1;
}

bool is_smooth(const SpatialTropicalCurve& curve) {
    for (std::size_t v = 0; v < curve.points().size(); ++v)
        if (!is_smooth_vertex(curve, v)) return false;
    return true;
}

AbstractTropicalCurve to_abstract(const SpatialTropicalCurve& curve) {
    std::vector<VertexId> vertices;
    for (std::size_t v = 0; v < curve.points().size(); ++v) vertices.push_back(static_cast<VertexId>(v));
    std::vector<Edge> edges;
    for (const auto& s : curve.segments())
        edges.push_back({static_cast<VertexId>(s.a), static_cast<VertexId>(s.b), Length(s.length)});
    std::set<VertexId> infinite;
    VertexId next = static_cast<VertexId>(curve.points().size());
    for (const auto& r : curve.rays()) {
        vertices.push_back(next);
        infinite.insert(next);
        edges.push_back({static_cast<VertexId>(r.base), next, Length::infinite()});
        ++next;
    }
    return AbstractTropicalCurve(std::move(vertices), std::move(edges), std::move(infinite));
}

}  // namespace tropcross
