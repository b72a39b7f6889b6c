#include "tropcross/metric_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace tropcross {

AbstractTropicalCurve::AbstractTropicalCurve(std::vector<VertexId> vertices, std::vector<Edge> edges,
                                             std::optional<std::set<VertexId>> infinite)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    if (vertices_.empty()) fail(ErrorKind::Validation, "curve has no vertices");
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!index_.emplace(vertices_[i], i).second)
            fail(ErrorKind::Validation, "duplicate vertex id " + std::to_string(vertices_[i]));
    incidence_.assign(vertices_.size(), {});
    degree_.assign(vertices_.size(), 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (!index_.count(ed.u) || !index_.count(ed.v))
            fail(ErrorKind::Validation, "edge " + std::to_string(e) + " references an unknown vertex");
        if (ed.is_loop() && ed.len.is_infinite())
            fail(ErrorKind::Validation, "infinite loop at vertex " + std::to_string(ed.u));
        auto iu = index_[ed.u], iv = index_[ed.v];
        incidence_[iu].push_back(e);
        degree_[iu] += 1;
        degree_[iv] += 1;
        if (iu != iv) incidence_[iv].push_back(e);
    }

    if (infinite) {
        infinite_ = *infinite;
        for (auto v : infinite_) {
            if (!index_.count(v)) fail(ErrorKind::Validation, "unknown infinite vertex " + std::to_string(v));
            if (degree(v) != 1 || !edges_[incident_edges(v)[0]].len.is_infinite())
                fail(ErrorKind::Validation,
                     "infinite vertex " + std::to_string(v) + " must be the leaf of an infinite edge");
        }
        for (const Edge& ed : edges_)
            if (ed.len.is_infinite() && !infinite_.count(ed.u) && !infinite_.count(ed.v))
                fail(ErrorKind::Validation, "infinite edge without an infinite endpoint");
    } else {
        for (const Edge& ed : edges_) {
            if (!ed.len.is_infinite()) continue;
            if (degree(ed.v) == 1)
                infinite_.insert(ed.v);
            else if (degree(ed.u) == 1)
                infinite_.insert(ed.u);
            else
                fail(ErrorKind::Validation, "infinite edge has no degree-1 endpoint");
        }
    }

    std::vector<char> seen(vertices_.size(), 0);
    std::deque<std::size_t> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        auto i = queue.front();
        queue.pop_front();
        for (auto e : incidence_[i]) {
            auto j = index_[other_end(e, vertices_[i])];
            if (!seen[j]) {
                seen[j] = 1;
                ++reached;
                queue.push_back(j);
            }
        }
    }
    if (reached != vertices_.size()) fail(ErrorKind::Validation, "curve is not connected");
}

std::size_t AbstractTropicalCurve::vertex_index(VertexId v) const {
    auto it = index_.find(v);
    if (it == index_.end()) fail(ErrorKind::Precondition, "unknown vertex " + std::to_string(v));
    return it->second;
}

int AbstractTropicalCurve::degree(VertexId v) const { return degree_[vertex_index(v)]; }

const std::vector<std::size_t>& AbstractTropicalCurve::incident_edges(VertexId v) const {
    return incidence_[vertex_index(v)];
}

VertexId AbstractTropicalCurve::other_end(std::size_t edge, VertexId v) const {
    const Edge& e = edges_.at(edge);
    return e.u == v ? e.v : e.u;
}

VertexId AbstractTropicalCurve::fresh_id() const {
    return *std::max_element(vertices_.begin(), vertices_.end()) + 1;
}

int AbstractTropicalCurve::genus() const {
    return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + 1;
}

std::size_t AbstractTropicalCurve::num_finite_edges() const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [](const Edge& e) { return !e.len.is_infinite(); }));
}

Subdivision subdivide(const AbstractTropicalCurve& curve, std::size_t edge, const Rational& offset) {
    if (edge >= curve.edges().size()) fail(ErrorKind::Precondition, "edge index out of range");
    Edge e = curve.edges()[edge];
    if (offset <= 0) fail(ErrorKind::Precondition, "subdivision offset must be positive");
    auto vertices = curve.vertices();
    auto edges = curve.edges();
    auto infinite = curve.infinite_vertices();
    VertexId x = curve.fresh_id();
    vertices.push_back(x);
    if (e.len.is_infinite()) {
        bool u_inf = infinite.count(e.u) != 0, v_inf = infinite.count(e.v) != 0;
        if (u_inf && v_inf) fail(ErrorKind::Precondition, "cannot subdivide an edge between two infinite vertices");
        VertexId fin = u_inf ? e.v : e.u;
        VertexId inf = u_inf ? e.u : e.v;
        edges[edge] = Edge{fin, x, Length(offset)};
        edges.push_back(Edge{x, inf, Length::infinite()});
    } else {
        if (offset >= e.len.value())
            fail(ErrorKind::Precondition, "subdivision offset must lie strictly inside the edge");
        edges[edge] = Edge{e.u, x, Length(offset)};
        edges.push_back(Edge{x, e.v, Length(e.len.value() - offset)});
    }
    return {AbstractTropicalCurve(std::move(vertices), std::move(edges), std::move(infinite)), x};
}

AbstractTropicalCurve tropical_modify(const AbstractTropicalCurve& curve, VertexId v) {
    if (!curve.has_vertex(v)) fail(ErrorKind::Precondition, "unknown vertex " + std::to_string(v));
    if (curve.is_infinite_vertex(v)) fail(ErrorKind::Precondition, "cannot modify at an infinite vertex");
    auto vertices = curve.vertices();
    auto edges = curve.edges();
    auto infinite = curve.infinite_vertices();
    VertexId leaf = curve.fresh_id();
    vertices.push_back(leaf);
    edges.push_back(Edge{v, leaf, Length::infinite()});
    infinite.insert(leaf);
    return AbstractTropicalCurve(std::move(vertices), std::move(edges), std::move(infinite));
}

AbstractTropicalCurve strip_infinite_edges(const AbstractTropicalCurve& curve) {
    std::vector<VertexId> vertices;
    for (auto v : curve.vertices())
        if (!curve.is_infinite_vertex(v)) vertices.push_back(v);
    std::vector<Edge> edges;
    for (const Edge& e : curve.edges())
        if (!e.len.is_infinite()) edges.push_back(e);
    if (vertices.empty()) {
        // A bare line: keep its finite-by-convention end.
        vertices.push_back(curve.vertices().front());
    }
    return AbstractTropicalCurve(std::move(vertices), std::move(edges), std::set<VertexId>{});
}

AbstractTropicalCurve canonical_form(const AbstractTropicalCurve& curve) {
    std::vector<std::optional<Edge>> edges(curve.edges().begin(), curve.edges().end());
    std::map<VertexId, std::vector<std::size_t>> inc;
    for (auto v : curve.vertices()) inc[v];
    for (std::size_t e = 0; e < edges.size(); ++e) {
        inc[edges[e]->u].push_back(e);
        if (!edges[e]->is_loop()) inc[edges[e]->v].push_back(e);
    }
    const auto& infinite = curve.infinite_vertices();
    std::set<VertexId> removed;

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [x, list] : inc) {
            if (removed.count(x) || infinite.count(x) || list.size() != 2) continue;
            Edge& e1 = *edges[list[0]];
            Edge& e2 = *edges[list[1]];
            if (e1.is_loop() || e2.is_loop()) continue;
            if (e1.len.is_infinite() && e2.len.is_infinite()) continue;
            VertexId a = e1.u == x ? e1.v : e1.u;
            VertexId b = e2.u == x ? e2.v : e2.u;
            Length len = (e1.len.is_infinite() || e2.len.is_infinite())
                             ? Length::infinite()
                             : Length(e1.len.value() + e2.len.value());
            std::size_t keep = list[0], drop = list[1];
            edges[keep] = Edge{a, b, len};
            edges[drop].reset();
            auto& lb = inc[b];
            std::replace(lb.begin(), lb.end(), drop, keep);
            if (a == b) {
                // Became a loop: list it once at a.
                auto& la = inc[a];
                auto first = std::find(la.begin(), la.end(), keep);
                la.erase(std::find(first + 1, la.end(), keep));
            }
            removed.insert(x);
            list.clear();
            changed = true;
        }
    }

    std::vector<VertexId> vertices;
    for (auto v : curve.vertices())
        if (!removed.count(v)) vertices.push_back(v);
    std::vector<Edge> out;
    for (auto& e : edges)
        if (e) out.push_back(*e);
    return AbstractTropicalCurve(std::move(vertices), std::move(out), infinite);
}

namespace {

struct IsoData {
    std::vector<std::vector<std::pair<int, Length>>> signature;  // (loop?, length) sorted
    std::vector<int> degree;
    std::vector<char> infinite;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Length>> between;
    std::vector<std::vector<std::size_t>> neighbours;
};

bool length_pair_less(const std::pair<int, Length>& a, const std::pair<int, Length>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
}

IsoData iso_data(const AbstractTropicalCurve& c) {
    IsoData d;
    std::size_t n = c.vertices().size();
    d.signature.resize(n);
    d.degree.resize(n);
    d.infinite.resize(n);
    d.neighbours.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.degree[i] = c.degree(c.vertices()[i]);
        d.infinite[i] = c.is_infinite_vertex(c.vertices()[i]);
    }
    for (const Edge& e : c.edges()) {
        auto iu = c.vertex_index(e.u), iv = c.vertex_index(e.v);
        d.signature[iu].push_back({e.is_loop(), e.len});
        if (iu != iv) {
            d.signature[iv].push_back({0, e.len});
            d.neighbours[iu].push_back(iv);
            d.neighbours[iv].push_back(iu);
        }
        d.between[{std::min(iu, iv), std::max(iu, iv)}].push_back(e.len);
    }
    for (auto& s : d.signature) std::sort(s.begin(), s.end(), length_pair_less);
    for (auto& [k, v] : d.between) std::sort(v.begin(), v.end());
    return d;
}

const std::vector<Length>& lengths_between(const IsoData& d, std::size_t i, std::size_t j) {
    static const std::vector<Length> none;
    auto it = d.between.find({std::min(i, j), std::max(i, j)});
    return it == d.between.end() ? none : it->second;
}

}  // namespace

std::optional<std::map<VertexId, VertexId>> find_isometry(const AbstractTropicalCurve& a,
                                                          const AbstractTropicalCurve& b) {
    if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size()) return std::nullopt;
    IsoData da = iso_data(a), db = iso_data(b);
    std::size_t n = a.vertices().size();
    auto same_sig = [&](std::size_t i, std::size_t j) {
        if (da.degree[i] != db.degree[j] || da.infinite[i] != db.infinite[j]) return false;
        const auto& sa = da.signature[i];
        const auto& sb = db.signature[j];
        if (sa.size() != sb.size()) return false;
        for (std::size_t k = 0; k < sa.size(); ++k)
            if (sa[k].first != sb[k].first || !(sa[k].second == sb[k].second)) return false;
        return true;
    };

    // BFS order so each vertex after the first has a mapped neighbour.
    std::vector<std::size_t> order;
    std::vector<char> queued(n, 0);
    for (std::size_t start = 0; start < n; ++start) {
        if (queued[start]) continue;
        std::deque<std::size_t> q{start};
        queued[start] = 1;
        while (!q.empty()) {
            auto i = q.front();
            q.pop_front();
            order.push_back(i);
            for (auto j : da.neighbours[i])
                if (!queued[j]) {
                    queued[j] = 1;
                    q.push_back(j);
                }
        }
    }

    std::vector<long> image(n, -1);
    std::vector<char> used(n, 0);
    std::vector<std::size_t> mapped;
    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == n) return true;
        std::size_t x = order[depth];
        std::vector<std::size_t> candidates;
        long anchor = -1;
        for (auto w : da.neighbours[x])
            if (image[w] >= 0) {
                anchor = image[w];
                break;
            }
        if (anchor >= 0)
            candidates = db.neighbours[static_cast<std::size_t>(anchor)];
        else
            for (std::size_t j = 0; j < n; ++j) candidates.push_back(j);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (auto c : candidates) {
            if (used[c] || !same_sig(x, c)) continue;
            if (lengths_between(da, x, x) != lengths_between(db, c, c)) continue;
            bool ok = true;
            for (auto y : mapped)
                if (lengths_between(da, x, y) != lengths_between(db, c, static_cast<std::size_t>(image[y]))) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            image[x] = static_cast<long>(c);
            used[c] = 1;
            mapped.push_back(x);
            if (extend(depth + 1)) return true;
            mapped.pop_back();
            used[c] = 0;
            image[x] = -1;
        }
        return false;
    };
    if (!extend(0)) return std::nullopt;
    std::map<VertexId, VertexId> result;
    for (std::size_t i = 0; i < n; ++i)
        result[a.vertices()[i]] = b.vertices()[static_cast<std::size_t>(image[i])];
    return result;
}

bool equivalent(const AbstractTropicalCurve& a, const AbstractTropicalCurve& b, bool up_to_modification) {
    if (up_to_modification) {
        // Canonicalize first so subdivided infinite legs are whole before they are stripped.
        auto reduce = [](const AbstractTropicalCurve& c) {
            return canonical_form(strip_infinite_edges(canonical_form(c)));
        };
        return find_isometry(reduce(a), reduce(b)).has_value();
    }
    return find_isometry(canonical_form(a), canonical_form(b)).has_value();
}

std::vector<std::vector<VertexId>> components_without(const AbstractTropicalCurve& curve, VertexId removed) {
    std::set<VertexId> seen{removed};
    std::vector<std::vector<VertexId>> out;
    for (auto s : curve.vertices()) {
        if (seen.count(s)) continue;
        std::vector<VertexId> comp;
        std::deque<VertexId> q{s};
        seen.insert(s);
        while (!q.empty()) {
            auto x = q.front();
            q.pop_front();
            comp.push_back(x);
            for (auto e : curve.incident_edges(x)) {
                auto y = curve.other_end(e, x);
                if (!seen.count(y)) {
                    seen.insert(y);
                    q.push_back(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool SprawlingCertificate::obstructs_embedding() const {
    return std::any_of(components.begin(), components.end(),
                       [](const SprawlComponent& c) { return c.forced_trivalent() >= 2; });
}

std::optional<SprawlingCertificate> detect_sprawling(const AbstractTropicalCurve& curve) {
    for (auto v : curve.vertices())
        if (!curve.is_infinite_vertex(v) && curve.degree(v) > 3)
            fail(ErrorKind::Precondition, "detect_sprawling needs finite vertices of degree at most 3");
    auto trivalent = [&](VertexId v) { return !curve.is_infinite_vertex(v) && curve.degree(v) == 3; };

    std::optional<SprawlingCertificate> first;
    for (auto v : curve.vertices()) {
        if (!trivalent(v)) continue;
        auto comps = components_without(curve, v);
        if (comps.size() != 3) continue;
        SprawlingCertificate cert;
        cert.vertex = v;
        bool all_have = true;
        for (std::size_t k = 0; k < 3; ++k) {
            SprawlComponent& sc = cert.components[k];
            sc.vertices = comps[k];
            std::set<VertexId> members(comps[k].begin(), comps[k].end());
            int edges_inside = 0;
            for (const Edge& e : curve.edges())
                if (members.count(e.u) && members.count(e.v)) ++edges_inside;
            for (auto x : comps[k])
                if (trivalent(x)) ++sc.trivalent;
            sc.genus = edges_inside - static_cast<int>(comps[k].size()) + 1;
            if (sc.trivalent == 0) all_have = false;
        }
        if (!all_have) continue;
        if (cert.obstructs_embedding()) return cert;
        if (!first) first = cert;
    }
    return first;
}

}  // namespace tropcross
