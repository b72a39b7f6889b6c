#pragma once

#include "tropcross/rational.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace tropcross {

using VertexId = std::int64_t;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;
    Length len;

    bool is_loop() const noexcept { return u == v; }
};

// Connected metric graph with optional infinite leaf edges.
// Infinite vertices are the degree-1 ends of INFINITE edges and carry no position.
class AbstractTropicalCurve {
public:
    AbstractTropicalCurve() = default;
    // When `infinite` is absent, the degree-1 endpoint of each infinite edge is marked
    // (the `v` end if both qualify).
    AbstractTropicalCurve(std::vector<VertexId> vertices, std::vector<Edge> edges,
                          std::optional<std::set<VertexId>> infinite = std::nullopt);

    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::set<VertexId>& infinite_vertices() const noexcept { return infinite_; }

    bool has_vertex(VertexId v) const { return index_.count(v) != 0; }
    bool is_infinite_vertex(VertexId v) const { return infinite_.count(v) != 0; }
    // Loops count twice.
    int degree(VertexId v) const;
    // Each loop listed once.
    const std::vector<std::size_t>& incident_edges(VertexId v) const;
    std::size_t vertex_index(VertexId v) const;
    VertexId other_end(std::size_t edge, VertexId v) const;
    VertexId fresh_id() const;

    // E - V + 1
    int genus() const;
    std::size_t num_finite_edges() const;

private:
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::set<VertexId> infinite_;
    std::map<VertexId, std::size_t> index_;
    std::vector<std::vector<std::size_t>> incidence_;
    std::vector<int> degree_;
};

struct Subdivision {
    AbstractTropicalCurve curve;
    VertexId new_vertex = 0;
};

// Offset is measured from `u` on finite edges and from the finite end on infinite ones.
// Edge `edge` keeps its index as the first piece; the second piece is appended.
Subdivision subdivide(const AbstractTropicalCurve& curve, std::size_t edge, const Rational& offset);

// Attaches a new infinite leaf at a finite vertex.
AbstractTropicalCurve tropical_modify(const AbstractTropicalCurve& curve, VertexId v);

// Removes every infinite edge together with its infinite vertices.
AbstractTropicalCurve strip_infinite_edges(const AbstractTropicalCurve& curve);

// Suppresses finite degree-2 vertices; never joins two infinite edges, keeps one vertex
// on a pure cycle. Idempotent.
AbstractTropicalCurve canonical_form(const AbstractTropicalCurve& curve);

// Length-preserving graph isomorphism, vertex map a -> b.
std::optional<std::map<VertexId, VertexId>> find_isometry(const AbstractTropicalCurve& a,
                                                          const AbstractTropicalCurve& b);

// With `up_to_modification`, infinite legs are stripped after canonicalizing.
bool equivalent(const AbstractTropicalCurve& a, const AbstractTropicalCurve& b,
                bool up_to_modification);

std::vector<std::vector<VertexId>> components_without(const AbstractTropicalCurve& curve,
                                                      VertexId removed);

struct SprawlComponent {
    std::vector<VertexId> vertices;
    int trivalent = 0;
    int genus = 0;
    // Lower bound on trivalent vertices of this part in any embedded modification:
    // a cycle drawn in the plane has at least three corners.
    int forced_trivalent() const { return genus > 0 && trivalent < 3 ? 3 : trivalent; }
};

struct SprawlingCertificate {
    VertexId vertex = 0;
    std::array<SprawlComponent, 3> components;
    bool obstructs_embedding() const;
};

// Requires every finite vertex to have degree <= 3. Prefers an obstructing vertex.
std::optional<SprawlingCertificate> detect_sprawling(const AbstractTropicalCurve& curve);

}  // namespace tropcross
