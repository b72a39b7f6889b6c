#include "support.hpp"

#include <algorithm>
#include <numeric>

namespace testing_support {

AbstractTropicalCurve theta(const Rational& a, const Rational& b, const Rational& c) {
    return AbstractTropicalCurve({0, 1}, {{0, 1, Length(a)}, {0, 1, Length(b)}, {0, 1, Length(c)}});
}

AbstractTropicalCurve cycle(const Rational& total, int vertices) {
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (int k = 0; k < vertices; ++k) vs.push_back(k);
    for (int k = 0; k < vertices; ++k) es.push_back({k, (k + 1) % vertices, Length(total / vertices)});
    return AbstractTropicalCurve(vs, es);
}

AbstractTropicalCurve path(const std::vector<Rational>& lengths) {
    std::vector<VertexId> vs{0};
    std::vector<Edge> es;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        vs.push_back(static_cast<VertexId>(k + 1));
        es.push_back({static_cast<VertexId>(k), static_cast<VertexId>(k + 1), Length(lengths[k])});
    }
    return AbstractTropicalCurve(vs, es);
}

AbstractTropicalCurve k4() {
    std::vector<Edge> es;
    for (VertexId a = 0; a < 4; ++a)
        for (VertexId b = a + 1; b < 4; ++b) es.push_back({a, b, len(1)});
    return AbstractTropicalCurve({0, 1, 2, 3}, es);
}

Rational random_length(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(1, 9), den(1, 6);
    return Rational(num(rng), den(rng));
}

AbstractTropicalCurve with_random_lengths(const AbstractTropicalCurve& curve, std::mt19937_64& rng) {
    std::vector<Edge> es = curve.edges();
    for (auto& e : es)
        if (!e.len.is_infinite()) e.len = Length(random_length(rng));
    return AbstractTropicalCurve(curve.vertices(), es, curve.infinite_vertices());
}

AbstractTropicalCurve random_cubic(std::mt19937_64& rng, int n) {
    std::vector<VertexId> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    for (;;) {
        std::vector<VertexId> stubs;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < 3; ++k) stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<Edge> es;
        for (std::size_t k = 0; k + 1 < stubs.size(); k += 2)
            es.push_back({stubs[k], stubs[k + 1], Length(random_length(rng))});
        // Reject disconnected pairings.
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& e : es) parent[find(static_cast<int>(e.u))] = find(static_cast<int>(e.v));
        int roots = 0;
        for (int v = 0; v < n; ++v)
            if (find(v) == v) ++roots;
        if (roots == 1) return AbstractTropicalCurve(vs, es);
    }
}

PlaneTropicalCurve standard_line() {
    return PlaneTropicalCurve::from_arrangement({{q(0), q(0)}}, {}, {{0, {1, 0}}, {0, {0, 1}}, {0, {-1, -1}}});
}

bool IdentityLedger::record(const PlaneTropicalCurve& curve, const std::string& label) {
    ++curves_;
    IdentityReport r;
    try {
        r = verify_identities(curve);
    } catch (const Error& e) {
        failures_.push_back(label + ": " + e.what());
        return false;
    }
    if (r.all() && r.genus_node.holds) return true;
    std::string what = label + ":";
    if (!r.genus_node.holds)
        what += " genus-node(i=" + std::to_string(r.genus_node.interior) + ",g=" + std::to_string(r.genus_node.genus) +
                ",n=" + std::to_string(r.genus_node.nodes) + ")";
    if (!r.pick_newton) what += " pick-newton";
    if (!r.pick_cells) what += " pick-cells";
    if (!r.cell_counts) what += " cell-counts";
    if (!r.parallelograms) what += " parallelograms";
    if (!r.cells_tile) what += " tiling";
    if (!r.primitive_edges) what += " primitive-edges";
    if (!r.bounded_regions) what += " bounded-regions";
    failures_.push_back(what);
    return false;
}

}  // namespace testing_support
