#include "tropcross/divisor.hpp"

#include "tropcross/plane_curve.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace tropcross {

CurvePoint CurvePoint::at_vertex(VertexId v) {
    CurvePoint p;
    p.vertex = v;
    return p;
}

CurvePoint CurvePoint::at_edge(std::size_t edge, Rational offset) {
    CurvePoint p;
    p.on_edge = true;
    p.edge = edge;
    p.offset = std::move(offset);
    return p;
}

namespace {

VertexId finite_end(const AbstractTropicalCurve& c, const Edge& e) {
    return c.is_infinite_vertex(e.u) ? e.v : e.u;
}

}  // namespace

CurvePoint normalize_point(const AbstractTropicalCurve& curve, const CurvePoint& p) {
    if (!p.on_edge) {
        if (!curve.has_vertex(p.vertex)) fail(ErrorKind::Validation, "unknown vertex " + std::to_string(p.vertex));
        return p;
    }
    if (p.edge >= curve.edges().size()) fail(ErrorKind::Validation, "unknown edge " + std::to_string(p.edge));
    const Edge& e = curve.edges()[p.edge];
    if (p.offset < 0) fail(ErrorKind::Validation, "negative offset on edge " + std::to_string(p.edge));
    if (e.len.is_infinite()) {
        if (p.offset == 0) return CurvePoint::at_vertex(finite_end(curve, e));
        return p;
    }
    if (p.offset > e.len.value()) fail(ErrorKind::Validation, "offset beyond edge " + std::to_string(p.edge));
    if (p.offset == 0) return CurvePoint::at_vertex(e.u);
    if (p.offset == e.len.value()) return CurvePoint::at_vertex(e.v);
    return p;
}

std::int64_t Divisor::degree() const {
    std::int64_t s = 0;
    for (const auto& t : terms) s += t.second;
    return s;
}

bool Divisor::is_effective() const {
    return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second >= 0; });
}

std::int64_t FiniteGraphModel::genus() const {
    return static_cast<std::int64_t>(edges.size()) - static_cast<std::int64_t>(num_vertices) + 1;
}

std::size_t FiniteGraphModel::vertex_at(const CurvePoint& raw) const {
    CurvePoint p = normalize_point(curve, raw);
    if (!p.on_edge) {
        auto it = vertex_of.find(p.vertex);
        if (it != vertex_of.end()) return it->second;
        // An infinite vertex: project to the finite end of its leg.
        for (const auto& e : curve.edges())
            if (e.len.is_infinite() && (e.u == p.vertex || e.v == p.vertex)) return vertex_of.at(finite_end(curve, e));
        fail(ErrorKind::Precondition, "vertex not in model");
    }
    const Edge& e = curve.edges()[p.edge];
    if (e.len.is_infinite()) return vertex_of.at(finite_end(curve, e));
    Rational k = p.offset * scale;
    if (denominator(k) != 1) fail(ErrorKind::Precondition, "point " + to_string(p.offset) + " is not a model vertex");
    return edge_chain[p.edge].at(static_cast<std::size_t>(to_int64(numerator(k))));
}

Config FiniteGraphModel::to_config(const Divisor& d) const {
    Config c(num_vertices, 0);
    for (const auto& [p, m] : d.terms) c[vertex_at(p)] += m;
    return c;
}

Divisor FiniteGraphModel::to_divisor(const Config& c) const {
    Divisor d;
    for (std::size_t v = 0; v < c.size(); ++v)
        if (c[v] != 0) d.terms.push_back({point_of[v], c[v]});
    return d;
}

FiniteGraphModel uniform_model(const AbstractTropicalCurve& curve, const std::vector<CurvePoint>& extra_points,
                               const ModelOptions& options) {
    if (options.refinement < 1) fail(ErrorKind::Precondition, "refinement must be positive");
    FiniteGraphModel m;
    m.curve = curve;
    m.refinement = options.refinement;
    BigInt den = 1;
    for (const auto& e : curve.edges())
        if (!e.len.is_infinite()) den = lcm_of(den, denominator(e.len.value()));
    for (const auto& raw : extra_points) {
        CurvePoint p = normalize_point(curve, raw);
        if (p.on_edge && !curve.edges()[p.edge].len.is_infinite()) den = lcm_of(den, denominator(p.offset));
    }
    m.scale = Rational(den);
    // A loop needs two segments to be loopless in the model.
    for (const auto& e : curve.edges())
        if (e.is_loop() && e.len.value() * m.scale == 1) {
            m.scale *= 2;
            break;
        }
    m.scale *= options.refinement;

    Rational total = 0;
    for (const auto& v : curve.vertices())
        if (!curve.is_infinite_vertex(v)) total += 1;
    for (const auto& e : curve.edges())
        if (!e.len.is_infinite()) total += e.len.value() * m.scale - 1;
    if (total > Rational(static_cast<std::int64_t>(options.max_vertices)))
        fail(ErrorKind::Precondition, "model needs " + to_string(total) + " vertices, cap is " +
                                          std::to_string(options.max_vertices));

    for (const auto& v : curve.vertices()) {
        if (curve.is_infinite_vertex(v)) continue;
        m.vertex_of[v] = m.num_vertices++;
        m.point_of.push_back(CurvePoint::at_vertex(v));
    }
    m.edge_chain.resize(curve.edges().size());
    for (std::size_t i = 0; i < curve.edges().size(); ++i) {
        const Edge& e = curve.edges()[i];
        if (e.len.is_infinite()) continue;
        auto units = static_cast<std::size_t>(to_int64(floor_of(e.len.value() * m.scale)));
        auto& chain = m.edge_chain[i];
        chain.push_back(m.vertex_of.at(e.u));
        for (std::size_t k = 1; k < units; ++k) {
            chain.push_back(m.num_vertices++);
            m.point_of.push_back(CurvePoint::at_edge(i, Rational(static_cast<std::int64_t>(k)) / m.scale));
        }
        chain.push_back(m.vertex_of.at(e.v));
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) m.edges.push_back({chain[k], chain[k + 1]});
    }
    m.adjacency.assign(m.num_vertices, {});
    for (const auto& [a, b] : m.edges) {
        m.adjacency[a].push_back(b);
        m.adjacency[b].push_back(a);
    }
    return m;
}

Config apply_script(const FiniteGraphModel& model, const Config& d, const std::vector<std::int64_t>& script) {
    Config out = d;
    for (const auto& [a, b] : model.edges) {
        std::int64_t flow = script[a] - script[b];
        out[a] -= flow;
        out[b] += flow;
    }
    return out;
}

namespace {

// Burns from q; returns the unburnt set as a mask.
std::vector<char> burn(const FiniteGraphModel& model, const Config& c, std::size_t q) {
    std::vector<char> burnt(model.num_vertices, 0);
    std::vector<std::int64_t> hits(model.num_vertices, 0);
    std::deque<std::size_t> queue{q};
    burnt[q] = 1;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (auto w : model.adjacency[v]) {
            if (burnt[w]) continue;
            if (++hits[w] > c[w]) {
                burnt[w] = 1;
                queue.push_back(w);
            }
        }
    }
    for (auto& b : burnt) b = !b;
    return burnt;
}

void fire(const FiniteGraphModel& model, Reduction& r, const std::vector<char>& set, std::int64_t times) {
    for (const auto& [a, b] : model.edges) {
        if (set[a] == set[b]) continue;
        std::size_t from = set[a] ? a : b, to = set[a] ? b : a;
        r.divisor[from] -= times;
        r.divisor[to] += times;
    }
    for (std::size_t v = 0; v < set.size(); ++v)
        if (set[v]) r.script[v] += times;
}

}  // namespace

bool is_superstable(const FiniteGraphModel& model, const Config& c, std::size_t q) {
    for (std::size_t v = 0; v < c.size(); ++v)
        if (v != q && c[v] < 0) return false;
    auto unburnt = burn(model, c, q);
    return std::none_of(unburnt.begin(), unburnt.end(), [](char b) { return b != 0; });
}

bool is_reduced(const FiniteGraphModel& model, const Config& d, std::size_t q) { return is_superstable(model, d, q); }

Reduction dhar_reduce(const FiniteGraphModel& model, const Config& d, std::size_t q) {
    const std::size_t n = model.num_vertices;
    if (q >= n) fail(ErrorKind::Precondition, "reduction vertex outside model");
    if (d.size() != n) fail(ErrorKind::Precondition, "configuration size does not match model");
    Reduction r{d, std::vector<std::int64_t>(n, 0)};

    std::vector<std::int64_t> dist(n, -1);
    std::deque<std::size_t> queue{q};
    dist[q] = 0;
    std::int64_t max_dist = 0;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        max_dist = std::max(max_dist, dist[v]);
        for (auto w : model.adjacency[v])
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    // Fire balls around q, outermost first, until everything off q is effective.
    for (std::int64_t k = max_dist; k >= 1; --k) {
        std::vector<char> ball(n, 0);
        for (std::size_t v = 0; v < n; ++v) ball[v] = dist[v] < k;
        std::int64_t times = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (dist[v] != k || r.divisor[v] >= 0) continue;
            std::int64_t in = 0;
            for (auto w : model.adjacency[v]) in += ball[w];
            times = std::max(times, (-r.divisor[v] + in - 1) / in);
        }
        if (times > 0) fire(model, r, ball, times);
    }
    for (;;) {
        auto unburnt = burn(model, r.divisor, q);
        std::int64_t times = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (!unburnt[v]) continue;
            std::int64_t out = 0;
            for (auto w : model.adjacency[v]) out += !unburnt[w];
            if (out > 0) times = times < 0 ? r.divisor[v] / out : std::min(times, r.divisor[v] / out);
        }
        if (times < 0) break;
        fire(model, r, unburnt, std::max<std::int64_t>(times, 1));
    }
    return r;
}

bool equivalent_to_effective(const FiniteGraphModel& model, const Config& d) {
    std::int64_t deg = 0;
    for (auto x : d) deg += x;
    if (deg < 0) return false;
    if (std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x >= 0; })) return true;
    return dhar_reduce(model, d, 0).divisor[0] >= 0;
}

std::int64_t rank(const FiniteGraphModel& model, const Config& d) {
    if (!equivalent_to_effective(model, d)) return -1;
    std::int64_t deg = 0;
    for (auto x : d) deg += x;
    Config work = d;
    std::function<bool(std::int64_t, std::size_t)> all_remain = [&](std::int64_t left, std::size_t start) {
        if (left == 0) return equivalent_to_effective(model, work);
        for (std::size_t v = start; v < model.num_vertices; ++v) {
            --work[v];
            bool ok = all_remain(left - 1, v);
            ++work[v];
            if (!ok) return false;
        }
        return true;
    };
    std::int64_t r = 0;
    while (r < deg && all_remain(r + 1, 0)) ++r;
    return r;
}

bool has_rank_at_least_one(const FiniteGraphModel& model, const Config& d) {
    std::int64_t deg = 0;
    for (auto x : d) deg += x;
    if (deg < 1) return false;
    bool effective = std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x >= 0; });
    for (std::size_t v = 0; v < model.num_vertices; ++v) {
        // D - v is already effective here.
        if (effective && d[v] >= 1) continue;
        if (dhar_reduce(model, d, v).divisor[v] < 1) return false;
    }
    return true;
}

Config canonical_divisor(const FiniteGraphModel& model) {
    Config k(model.num_vertices);
    for (std::size_t v = 0; v < model.num_vertices; ++v) k[v] = static_cast<std::int64_t>(model.valence(v)) - 2;
    return k;
}

RiemannRochCheck riemann_roch_check(const FiniteGraphModel& model, const Config& d) {
    RiemannRochCheck out;
    Config k = canonical_divisor(model);
    Config kd(model.num_vertices);
    for (std::size_t v = 0; v < model.num_vertices; ++v) {
        kd[v] = k[v] - d[v];
        out.degree += d[v];
    }
    out.genus = model.genus();
    out.rank_d = rank(model, d);
    out.rank_k_minus_d = rank(model, kd);
    out.holds = out.rank_d - out.rank_k_minus_d == out.degree - out.genus + 1;
    return out;
}

GonalityResult gonality(const AbstractTropicalCurve& curve, std::optional<std::int64_t> d_max,
                        const ModelOptions& options) {
    FiniteGraphModel model = uniform_model(curve, {}, options);
    GonalityResult out;
    out.d_max = d_max.value_or(curve.genus() + 1);
    out.refinement = options.refinement;
    out.model_vertices = model.num_vertices;
    const std::size_t q = 0;
    // Every class of an effective divisor has a q-reduced representative k·q + c with c superstable.
    for (std::int64_t d = 1; d <= out.d_max; ++d) {
        Config c(model.num_vertices, 0);
        std::optional<Config> found;
        std::function<void(std::int64_t, std::size_t)> search = [&](std::int64_t used, std::size_t start) {
            if (found) return;
            Config cand = c;
            cand[q] = d - used;
            if (has_rank_at_least_one(model, cand)) {
                found = cand;
                return;
            }
            if (used == d) return;
            for (std::size_t v = std::max<std::size_t>(start, 1); v < model.num_vertices && !found; ++v) {
                ++c[v];
                if (is_superstable(model, c, q)) search(used + 1, v);
                --c[v];
            }
        };
        search(0, 1);
        if (found) {
            out.gonality = d;
            out.witness = model.to_divisor(*found);
            return out;
        }
    }
    return out;
}

namespace {

bool is_classical_line(const PlaneTropicalCurve& curve) {
    std::vector<Dir2> dirs;
    for (const auto& s : curve.segments()) dirs.push_back(s.dir);
    for (const auto& r : curve.rays()) dirs.push_back(r.dir);
    if (dirs.empty()) return false;
    for (const auto& d : dirs)
        if (det(d, dirs[0]) != 0) return false;
    const Point2& o = curve.points()[0];
    for (const auto& p : curve.points())
        if ((p[0] - o[0]) * dirs[0][1] != (p[1] - o[1]) * dirs[0][0]) return false;
    return true;
}

}  // namespace

LineSectionRank verify_line_section_rank(const PlaneTropicalCurve& curve, const std::array<std::int64_t, 2>& lambda,
                                         const Rational& a, const ModelOptions& options) {
    if (is_classical_line(curve)) fail(ErrorKind::Precondition, "curve is just a line");
    LineSection section = stable_intersection_with_line(curve, lambda, a);
    if (section.resolution.components.size() != 1)
        fail(ErrorKind::Precondition, "resolution is disconnected; not an immersed connected curve");
    LineSectionRank out;
    out.divisor = section.on_component(0);
    out.degree = out.divisor.degree();
    const auto& abstract = section.resolution.components[0];
    std::vector<CurvePoint> support;
    for (const auto& t : out.divisor.terms) support.push_back(t.first);
    FiniteGraphModel model = uniform_model(abstract, support, options);
    out.model_vertices = model.num_vertices;
    out.holds = has_rank_at_least_one(model, model.to_config(out.divisor));
    return out;
}

}  // namespace tropcross
