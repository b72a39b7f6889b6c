#include "tropcross/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace tropcross {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

struct Frame {
    Rational x0, y0, x1, y1;
    double scale = 1;
    int width = 0, height = 0;

    double px(const Rational& x) const { return to_double(x - x0) * scale; }
    double py(const Rational& y) const { return to_double(y1 - y) * scale; }
};

Frame make_frame(Rational x0, Rational x1, Rational y0, Rational y1, const SvgOptions& o) {
    Rational w = x1 - x0, h = y1 - y0;
    Rational base = std::max({w, h, Rational(1)});
    if (w == 0) w = base;
    if (h == 0) h = base;
    Rational m(static_cast<std::int64_t>(o.margin * 1000 + 0.5), 1000);
    Frame f;
    f.x0 = (x0 + x1 - w) / 2 - m * w;
    f.x1 = (x0 + x1 + w) / 2 + m * w;
    f.y0 = (y0 + y1 - h) / 2 - m * h;
    f.y1 = (y0 + y1 + h) / 2 + m * h;
    f.width = o.width;
    f.scale = o.width / to_double(f.x1 - f.x0);
    f.height = static_cast<int>(to_double(f.y1 - f.y0) * f.scale + 0.5);
    return f;
}

void header(std::ostringstream& out, const Frame& f) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f.width << "\" height=\""
        << f.height << "\" viewBox=\"0 0 " << f.width << " " << f.height << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << f.width << "\" height=\"" << f.height << "\" fill=\"white\"/>\n";
}

void line(std::ostringstream& out, double ax, double ay, double bx, double by, const char* cls) {
    out << "<line class=\"" << cls << "\" x1=\"" << num(ax) << "\" y1=\"" << num(ay) << "\" x2=\"" << num(bx)
        << "\" y2=\"" << num(by) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
}

}  // namespace

std::string render_curve_svg(const PlaneTropicalCurve& curve, const SvgOptions& options) {
    const auto& pts = curve.points();
    if (pts.empty()) fail(ErrorKind::Precondition, "nothing to render");
    Rational x0 = pts[0][0], x1 = x0, y0 = pts[0][1], y1 = y0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    Frame f = make_frame(x0, x1, y0, y1, options);
    std::ostringstream out;
    header(out, f);
    for (const auto& s : curve.segments())
        line(out, f.px(pts[s.a][0]), f.py(pts[s.a][1]), f.px(pts[s.b][0]), f.py(pts[s.b][1]), "segment");
    for (const auto& r : curve.rays()) {
        const Point2& b = pts[r.base];
        std::optional<Rational> t;
        for (int k = 0; k < 2; ++k) {
            if (r.dir[k] == 0) continue;
            Rational lim = k == 0 ? (r.dir[k] > 0 ? f.x1 : f.x0) : (r.dir[k] > 0 ? f.y1 : f.y0);
            Rational tk = (lim - b[k]) / r.dir[k];
            if (!t || tk < *t) t = tk;
        }
        line(out, f.px(b[0]), f.py(b[1]), f.px(b[0] + *t * r.dir[0]), f.py(b[1] + *t * r.dir[1]), "ray");
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
        auto cls = classify_vertex(curve, v);
        double cx = f.px(pts[v][0]), cy = f.py(pts[v][1]);
        if (cls.kind == VertexKind::Node) {
            out << "<circle class=\"node\" cx=\"" << num(cx) << "\" cy=\"" << num(cy)
                << "\" r=\"4\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n"
                << "<text class=\"multiplicity\" x=\"" << num(cx + 6) << "\" y=\"" << num(cy - 6)
                << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"red\">" << cls.multiplicity
                << "</text>\n";
        } else if (cls.kind == VertexKind::Smooth) {
            out << "<circle class=\"vertex\" cx=\"" << num(cx) << "\" cy=\"" << num(cy)
                << "\" r=\"2.5\" fill=\"black\"/>\n";
        } else if (cls.kind == VertexKind::Invalid) {
            out << "<circle class=\"invalid\" cx=\"" << num(cx) << "\" cy=\"" << num(cy)
                << "\" r=\"4\" fill=\"orange\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_dual_svg(const DualSubdivision& dual, const SvgOptions& options) {
    const auto& hull = dual.newton.vertices();
    if (hull.empty()) fail(ErrorKind::Precondition, "empty Newton polygon");
    std::int64_t x0 = hull[0][0], x1 = x0, y0 = hull[0][1], y1 = y0;
    for (const auto& p : hull) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    SvgOptions o = options;
    o.margin = std::max(o.margin, 0.1);
    Frame f = make_frame(Rational(x0), Rational(x1), Rational(y0), Rational(y1), o);
    std::ostringstream out;
    header(out, f);
    auto poly = [&](const std::vector<LatticePoint>& vs, const char* cls, const char* fill) {
        out << "<polygon class=\"" << cls << "\" points=\"";
        for (std::size_t i = 0; i < vs.size(); ++i)
            out << (i ? " " : "") << num(f.px(Rational(vs[i][0]))) << "," << num(f.py(Rational(vs[i][1])));
        out << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    };
    poly(hull, "newton", "none");
    for (const auto& c : dual.cells)
        poly(c.verts, c.kind == CellKind::Triangle ? "triangle" : "parallelogram",
             c.kind == CellKind::Triangle ? "#cfe3f7" : "#f7d9b0");
    auto sets = lattice_points(dual.newton);
    for (const auto* group : {&sets.boundary, &sets.interior}) {
        bool interior = group == &sets.interior;
        std::vector<LatticePoint> sorted = *group;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& p : sorted)
            out << "<circle class=\"" << (interior ? "interior" : "boundary") << "\" cx=\""
                << num(f.px(Rational(p[0]))) << "\" cy=\"" << num(f.py(Rational(p[1])))
                << "\" r=\"3\" fill=\"" << (interior ? "black" : "white") << "\" stroke=\"black\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace tropcross
