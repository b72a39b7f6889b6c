#pragma once

#include "tropcross/metric_graph.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace tropcross {

class PlaneTropicalCurve;

// A point of an abstract curve: a vertex, or an interior point of an edge at distance
// `offset` from its u end (from the finite end for infinite edges).
struct CurvePoint {
    bool on_edge = false;
    VertexId vertex = 0;
    std::size_t edge = 0;
    Rational offset;

    static CurvePoint at_vertex(VertexId v);
    static CurvePoint at_edge(std::size_t edge, Rational offset);

    bool operator==(const CurvePoint&) const = default;
};

// Rewrites edge points at offset 0 or at the full length as vertices; validates range.
CurvePoint normalize_point(const AbstractTropicalCurve& curve, const CurvePoint& p);

struct Divisor {
    std::vector<std::pair<CurvePoint, std::int64_t>> terms;

    std::int64_t degree() const;
    bool is_effective() const;
};

// Chip configuration on the vertices of a finite model.
using Config = std::vector<std::int64_t>;

struct ModelOptions {
    std::int64_t refinement = 1;
    std::size_t max_vertices = 64;
};

// Unweighted loopless multigraph: the compact part of a curve with every edge cut into
// unit segments after scaling by `scale`. Infinite edges are dropped and points on them
// map to their finite endpoint.
struct FiniteGraphModel {
    AbstractTropicalCurve curve;
    Rational scale;
    std::int64_t refinement = 1;
    std::size_t num_vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::size_t>> adjacency;  // neighbours with multiplicity
    std::map<VertexId, std::size_t> vertex_of;
    // Model vertices along each finite curve edge from u to v; empty for infinite edges.
    std::vector<std::vector<std::size_t>> edge_chain;
    std::vector<CurvePoint> point_of;

    std::int64_t genus() const;
    std::size_t valence(std::size_t v) const { return adjacency[v].size(); }
    // Throws Error(Precondition) when the point is not realized by the model.
    std::size_t vertex_at(const CurvePoint& p) const;
    Config to_config(const Divisor& d) const;
    Divisor to_divisor(const Config& c) const;
};

// Throws Error(Precondition) when the model would exceed options.max_vertices.
FiniteGraphModel uniform_model(const AbstractTropicalCurve& curve, const std::vector<CurvePoint>& extra_points = {},
                               const ModelOptions& options = {});

// Firing script s: the result equals D − L·s with L the model Laplacian.
struct Reduction {
    Config divisor;
    std::vector<std::int64_t> script;
};

Config apply_script(const FiniteGraphModel& model, const Config& d, const std::vector<std::int64_t>& script);
bool is_superstable(const FiniteGraphModel& model, const Config& c, std::size_t q);
bool is_reduced(const FiniteGraphModel& model, const Config& d, std::size_t q);
Reduction dhar_reduce(const FiniteGraphModel& model, const Config& d, std::size_t q);
bool equivalent_to_effective(const FiniteGraphModel& model, const Config& d);

// Baker–Norine rank on the model, by exhaustive removal of effective divisors.
std::int64_t rank(const FiniteGraphModel& model, const Config& d);
bool has_rank_at_least_one(const FiniteGraphModel& model, const Config& d);

Config canonical_divisor(const FiniteGraphModel& model);

struct RiemannRochCheck {
    std::int64_t rank_d = 0;
    std::int64_t rank_k_minus_d = 0;
    std::int64_t degree = 0;
    std::int64_t genus = 0;
    bool holds = false;
};
RiemannRochCheck riemann_roch_check(const FiniteGraphModel& model, const Config& d);

// Result of a vertex-supported search at one refinement level. An empty `gonality`
// means only that no divisor of degree ≤ d_max was found on this model.
struct GonalityResult {
    std::optional<std::int64_t> gonality;
    Divisor witness;
    std::int64_t d_max = 0;
    std::int64_t refinement = 1;
    std::size_t model_vertices = 0;
};

// d_max defaults to genus + 1.
GonalityResult gonality(const AbstractTropicalCurve& curve, std::optional<std::int64_t> d_max = std::nullopt,
                        const ModelOptions& options = {});

struct LineSectionRank {
    bool holds = false;
    std::int64_t degree = 0;
    Divisor divisor;
    std::size_t model_vertices = 0;
};

// Throws Error(Precondition) when the curve is a single classical line or its
// resolution is disconnected.
LineSectionRank verify_line_section_rank(const PlaneTropicalCurve& curve, const std::array<std::int64_t, 2>& lambda, const Rational& a,
                                         const ModelOptions& options = {});

}  // namespace tropcross
