#pragma once

#include "tropcross/divisor.hpp"
#include "tropcross/metric_graph.hpp"
#include "tropcross/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tropcross {

using Point2 = std::array<Rational, 2>;
using Dir2 = std::array<std::int64_t, 2>;

std::int64_t det(const Dir2& a, const Dir2& b);
Dir2 neg(const Dir2& a);

// p − q = α·v with v primitive; throws on p == q.
struct LatticeDisplacement {
    Rational length;
    IVec dir;
};
LatticeDisplacement lattice_displacement(const std::vector<Rational>& from, const std::vector<Rational>& to);
Rational lattice_length(const std::vector<Rational>& p, const std::vector<Rational>& q);

// Absolute determinant of two primitive vectors; throws on parallel input.
std::int64_t node_multiplicity(const Dir2& u, const Dir2& v);

struct PlaneSegment {
    std::size_t a = 0;
    std::size_t b = 0;
    Dir2 dir{};  // primitive, a -> b
    Rational length;
};

struct PlaneRay {
    std::size_t base = 0;
    Dir2 dir{};
};

struct HalfEdge {
    bool is_ray = false;
    std::size_t element = 0;
    Dir2 dir{};  // outgoing from the vertex
};

enum class VertexKind { Smooth, Subdivision, Node, Invalid };
enum class InvalidReason { None, Valence, Unbalanced, NonUnimodular };

struct VertexClass {
    VertexKind kind = VertexKind::Invalid;
    int valence = 0;
    std::int64_t multiplicity = 0;  // Node only
    InvalidReason reason = InvalidReason::None;
};

std::string to_string(VertexKind k);
std::string to_string(InvalidReason r);

// Plane curve after vertex resolution: elements meet only at shared vertices.
class PlaneTropicalCurve {
public:
    PlaneTropicalCurve() = default;

    // Splits elements at every exact intersection and merges coincident points.
    // Throws Error(Validation) on collinear overlaps, zero-length segments,
    // non-primitive ray directions.
    static PlaneTropicalCurve from_arrangement(const std::vector<Point2>& points,
                                               const std::vector<std::pair<std::size_t, std::size_t>>& segments,
                                               const std::vector<PlaneRay>& rays);

    const std::vector<Point2>& points() const noexcept { return points_; }
    const std::vector<PlaneSegment>& segments() const noexcept { return segments_; }
    const std::vector<PlaneRay>& rays() const noexcept { return rays_; }
    const std::vector<HalfEdge>& half_edges(std::size_t v) const { return star_.at(v); }
    std::size_t num_vertices() const noexcept { return points_.size(); }

private:
    std::vector<Point2> points_;
    std::vector<PlaneSegment> segments_;
    std::vector<PlaneRay> rays_;
    std::vector<std::vector<HalfEdge>> star_;
    void build_star();
};

VertexClass classify_vertex(const PlaneTropicalCurve& curve, std::size_t v);

// Throws Error(Validation) naming the first invalid vertex.
void validate(const PlaneTropicalCurve& curve);
bool is_valid(const PlaneTropicalCurve& curve);

struct NodeInfo {
    std::size_t vertex = 0;
    std::int64_t multiplicity = 0;
};
std::vector<NodeInfo> nodes(const PlaneTropicalCurve& curve);

// Sum of node multiplicities; throws on an invalid curve.
std::int64_t total_crossings(const PlaneTropicalCurve& curve);

// Position of a plane element inside the resolved abstract curve.
struct ResolvedEdge {
    std::size_t component = 0;
    std::size_t edge = 0;  // edge index within that component
};

struct Resolution {
    std::vector<AbstractTropicalCurve> components;
    std::vector<ResolvedEdge> segment_edge;  // per plane segment; u at segment.a
    std::vector<ResolvedEdge> ray_edge;      // per plane ray; u at the base
    // Per plane vertex and outgoing direction; the two lines of a node differ.
    std::vector<std::vector<std::pair<Dir2, VertexId>>> vertex_ids;
    std::map<VertexId, std::size_t> component_of;

    VertexId vertex_for(std::size_t plane_vertex, const Dir2& outgoing) const;

    // E − V + 1 over all components together.
    int genus() const;
};

// Splits each node into one vertex per line; rays become INFINITE edges.
Resolution resolve_nodes(const PlaneTropicalCurve& curve);

// Single-component resolution equivalent to `target` up to modification.
bool is_immersion_of(const PlaneTropicalCurve& curve, const AbstractTropicalCurve& target);
// Exact equivalence, no modification allowed.
bool is_strict_immersion_of(const PlaneTropicalCurve& curve, const AbstractTropicalCurve& target);

struct DivisorTerm {
    std::size_t component = 0;
    CurvePoint point;
    std::int64_t multiplicity = 0;
};

struct LineSection {
    Resolution resolution;
    std::vector<DivisorTerm> terms;

    std::int64_t degree() const;
    // Terms on one component as a Divisor of that component.
    Divisor on_component(std::size_t component) const;
};

// Divisor of the line {λ·x = a} on the resolved curve. Each point counts the outgoing
// slopes towards the positive side, which also settles segments lying in the line.
LineSection stable_intersection_with_line(const PlaneTropicalCurve& curve, const Dir2& lambda,
                                          const Rational& a);

}  // namespace tropcross
