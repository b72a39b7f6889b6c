#include "tropcross/json_io.hpp"

#include <json.hpp>

namespace tropcross {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Format, std::string("invalid JSON: ") + e.what());
    }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        fail(ErrorKind::Format, std::string("unexpected JSON shape: ") + e.what());
    }
}

Rational rational_field(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    fail(ErrorKind::Format, "coordinates must be rational strings or integers");
}

VertexId id_field(const json& j) {
    if (!j.is_number_integer()) fail(ErrorKind::Format, "vertex ids must be integers");
    return j.get<VertexId>();
}

ordered point_json(const std::vector<Rational>& p) {
    ordered a = ordered::array();
    for (const auto& x : p) a.push_back(to_string(x));
    return a;
}

ordered dir_json(const IVec& d) {
    ordered a = ordered::array();
    for (auto x : d) a.push_back(x);
    return a;
}

}  // namespace

std::string to_json(const AbstractTropicalCurve& curve) {
    ordered j;
    j["vertices"] = curve.vertices();
    ordered edges = ordered::array();
    for (const auto& e : curve.edges()) edges.push_back({{"u", e.u}, {"v", e.v}, {"len", to_string(e.len)}});
    j["edges"] = edges;
    ordered inf = ordered::array();
    for (auto v : curve.infinite_vertices()) inf.push_back(v);
    j["infinite"] = inf;
    return j.dump(2) + "\n";
}

AbstractTropicalCurve abstract_curve_from_json(const std::string& text) {
    json j = parse(text);
    return guarded([&] {
        std::vector<VertexId> vs;
        for (const auto& v : j.at("vertices")) vs.push_back(id_field(v));
        std::vector<Edge> es;
        for (const auto& e : j.at("edges")) {
            if (!e.at("len").is_string()) fail(ErrorKind::Format, "edge lengths must be strings");
            es.push_back({id_field(e.at("u")), id_field(e.at("v")), parse_length(e.at("len").get<std::string>())});
        }
        std::optional<std::set<VertexId>> inf;
        if (j.contains("infinite")) {
            inf.emplace();
            for (const auto& v : j.at("infinite")) inf->insert(id_field(v));
        }
        return AbstractTropicalCurve(vs, es, inf);
    });
}

std::string to_json(const PlaneTropicalCurve& curve) {
    ordered j;
    ordered pts = ordered::array();
    for (const auto& p : curve.points()) pts.push_back(point_json({p[0], p[1]}));
    j["points"] = pts;
    ordered segs = ordered::array();
    for (const auto& s : curve.segments()) segs.push_back({s.a, s.b});
    j["segments"] = segs;
    ordered rays = ordered::array();
    for (const auto& r : curve.rays()) rays.push_back({{"base", r.base}, {"dir", {r.dir[0], r.dir[1]}}});
    j["rays"] = rays;
    return j.dump(2) + "\n";
}

PlaneTropicalCurve plane_curve_from_json(const std::string& text) {
    json j = parse(text);
    return guarded([&] {
        std::vector<Point2> pts;
        for (const auto& p : j.at("points")) {
            if (p.size() != 2) fail(ErrorKind::Format, "plane points need two coordinates");
            pts.push_back({rational_field(p[0]), rational_field(p[1])});
        }
        std::vector<std::pair<std::size_t, std::size_t>> segs;
        for (const auto& s : j.at("segments")) segs.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
        std::vector<PlaneRay> rays;
        for (const auto& r : j.at("rays")) {
            const auto& d = r.at("dir");
            if (d.size() != 2) fail(ErrorKind::Format, "plane rays need two direction entries");
            rays.push_back({r.at("base").get<std::size_t>(), {d[0].get<std::int64_t>(), d[1].get<std::int64_t>()}});
        }
        for (const auto& [a, b] : segs)
            if (a >= pts.size() || b >= pts.size()) fail(ErrorKind::Format, "segment endpoint out of range");
        for (const auto& r : rays)
            if (r.base >= pts.size()) fail(ErrorKind::Format, "ray base out of range");
        return PlaneTropicalCurve::from_arrangement(pts, segs, rays);
    });
}

std::string to_json(const SpatialTropicalCurve& curve) {
    ordered j;
    j["dim"] = curve.dim();
    ordered pts = ordered::array();
    for (const auto& p : curve.points()) pts.push_back(point_json(p));
    j["points"] = pts;
    ordered segs = ordered::array();
    for (const auto& s : curve.segments()) segs.push_back({s.a, s.b});
    j["segments"] = segs;
    ordered rays = ordered::array();
    for (const auto& r : curve.rays()) rays.push_back({{"base", r.base}, {"dir", dir_json(r.dir)}});
    j["rays"] = rays;
    return j.dump(2) + "\n";
}

SpatialTropicalCurve spatial_curve_from_json(const std::string& text) {
    json j = parse(text);
    return guarded([&] {
        std::vector<PointN> pts;
        for (const auto& p : j.at("points")) {
            PointN q;
            for (const auto& x : p) q.push_back(rational_field(x));
            pts.push_back(q);
        }
        std::size_t dim = j.contains("dim") ? j.at("dim").get<std::size_t>() : (pts.empty() ? 0 : pts[0].size());
        for (const auto& p : pts)
            if (p.size() != dim) fail(ErrorKind::Format, "point dimension mismatch");
        std::vector<std::pair<std::size_t, std::size_t>> segs;
        for (const auto& s : j.at("segments")) segs.push_back({s.at(0).get<std::size_t>(), s.at(1).get<std::size_t>()});
        std::vector<SpatialRay> rays;
        for (const auto& r : j.at("rays")) {
            IVec d;
            for (const auto& x : r.at("dir")) d.push_back(x.get<std::int64_t>());
            if (d.size() != dim) fail(ErrorKind::Format, "ray dimension mismatch");
            rays.push_back({r.at("base").get<std::size_t>(), d});
        }
        for (const auto& [a, b] : segs)
            if (a >= pts.size() || b >= pts.size()) fail(ErrorKind::Format, "segment endpoint out of range");
        for (const auto& r : rays)
            if (r.base >= pts.size()) fail(ErrorKind::Format, "ray base out of range");
        return SpatialTropicalCurve::from_arrangement(dim, pts, segs, rays);
    });
}

std::string point_label(const CurvePoint& p) {
    if (!p.on_edge) return "v:" + std::to_string(p.vertex);
    return "e:" + std::to_string(p.edge) + "@" + to_string(p.offset);
}

CurvePoint parse_point_label(const std::string& label) {
    auto digits = [&](const std::string& s) {
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
            fail(ErrorKind::Format, "bad point label '" + label + "'");
        return std::stoll(s);
    };
    if (label.rfind("v:", 0) == 0) return CurvePoint::at_vertex(digits(label.substr(2)));
    if (label.rfind("e:", 0) == 0) {
        auto at = label.find('@');
        if (at == std::string::npos) fail(ErrorKind::Format, "edge point label needs '@offset'");
        auto e = digits(label.substr(2, at - 2));
        if (e < 0) fail(ErrorKind::Format, "negative edge index");
        return CurvePoint::at_edge(static_cast<std::size_t>(e), parse_rational(label.substr(at + 1)));
    }
    fail(ErrorKind::Format, "bad point label '" + label + "'");
}

std::string to_json(const Divisor& divisor) {
    ordered j;
    ordered pts = ordered::array();
    for (const auto& [p, m] : divisor.terms) pts.push_back({{"at", point_label(p)}, {"mult", m}});
    j["points"] = pts;
    return j.dump(2) + "\n";
}

Divisor divisor_from_json(const std::string& text) {
    json j = parse(text);
    return guarded([&] {
        Divisor d;
        for (const auto& t : j.at("points")) {
            auto m = t.at("mult").get<std::int64_t>();
            if (m == 0) fail(ErrorKind::Format, "divisor coefficients must be nonzero");
            d.terms.push_back({parse_point_label(t.at("at").get<std::string>()), m});
        }
        return d;
    });
}

std::string to_json(const BuildReport& r) {
    ordered j;
    j["crossings"] = r.crossings;
    j["segments"] = r.segments;
    j["bounded_segments"] = r.bounded_segments;
    j["rays"] = r.rays;
    j["subdivisions_inserted"] = r.subdivisions_inserted();
    j["preprocessing_subdivisions"] = r.preprocessing_subdivisions;
    j["label_subdivisions"] = r.label_subdivisions;
    j["retries"] = r.retries;
    j["seed"] = r.seed;
    j["prime"] = r.prime;
    return j.dump(2) + "\n";
}

std::string to_json(const DualSubdivision& dual) {
    ordered j;
    ordered hull = ordered::array();
    for (const auto& v : dual.newton.vertices()) hull.push_back({v[0], v[1]});
    j["hull"] = hull;
    ordered cells = ordered::array();
    for (const auto& c : dual.cells) {
        ordered verts = ordered::array();
        for (const auto& v : c.verts) verts.push_back({v[0], v[1]});
        ordered cell;
        cell["verts"] = verts;
        cell["dual_vertex"] = c.dual_vertex;
        cell["kind"] = c.kind == CellKind::Triangle ? "triangle" : "parallelogram";
        if (c.kind == CellKind::Parallelogram) cell["multiplicity"] = c.multiplicity;
        cells.push_back(cell);
    }
    j["cells"] = cells;
    return j.dump(2) + "\n";
}

}  // namespace tropcross
