#pragma once

#include "tropcross/metric_graph.hpp"
#include "tropcross/plane_curve.hpp"
#include "tropcross/spatial_curve.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace tropcross {

// e_0 = (−1,…,−1), e_k = k-th unit vector; k taken mod n+1.
IVec basis_vector(int k, int n);

using Incidence = std::pair<VertexId, std::size_t>;  // (vertex, edge index)

struct IncidenceLabels {
    AbstractTropicalCurve curve;
    std::map<Incidence, int> label;
    int inserted = 0;
};

// Requires no loops, no parallel edges, finite degrees <= n+1.
IncidenceLabels label_incidences(const AbstractTropicalCurve& curve, int n);

struct BreakpointPlan {
    std::size_t edge = 0;
    int label = 0;  // tangent e_label at the first point, e_{label+1} at the last
    std::vector<Rational> alpha;
    Rational alpha0_p, alpha0_pp, alpha1_p, alpha1_pp;
    Rational m, ell;
    std::vector<PointN> points;  // consecutive duplicates removed
};

// Throws Error(Precondition) if ell <= m.
BreakpointPlan edge_breakpoints(const PointN& pu, const PointN& pw, const Rational& ell, int i, int n);

struct ImmersionPlan {
    int n = 2;
    AbstractTropicalCurve preprocessed;  // loops and parallel edges subdivided
    IncidenceLabels labels;
    Rational box;  // L
    std::map<VertexId, PointN> placement;
    std::vector<BreakpointPlan> edges;
    std::uint64_t seed = 0;
    std::uint64_t prime = 0;
    int retries = 0;
};

struct PlanRay {
    PointN base;
    IVec dir;
    bool modification = false;  // false for rays carrying input infinite edges
};

struct BuildReport {
    std::int64_t crossings = 0;
    std::size_t segments = 0;  // bounded segments plus rays before resolution
    std::size_t bounded_segments = 0;
    std::size_t rays = 0;
    int preprocessing_subdivisions = 0;
    int label_subdivisions = 0;
    int retries = 0;
    std::uint64_t seed = 0;
    std::uint64_t prime = 0;
    std::vector<PlanRay> plan_rays;

    int subdivisions_inserted() const { return preprocessing_subdivisions + label_subdivisions; }
};

struct PlaneImmersion {
    PlaneTropicalCurve curve;
    ImmersionPlan plan;
    BuildReport report;
};

struct SpatialEmbedding {
    SpatialTropicalCurve curve;
    ImmersionPlan plan;
    BuildReport report;
};

inline constexpr int kDefaultRetryBudget = 64;

// Throws Error(Precondition) on degree > 3, Error(RetryBudget) when every draw was degenerate.
PlaneImmersion build_immersion(const AbstractTropicalCurve& curve, std::uint64_t seed,
                               int retry_budget = kDefaultRetryBudget);

// Requires n >= max(3, d−1) for maximal finite degree d.
SpatialEmbedding build_embedding(const AbstractTropicalCurve& curve, int n, std::uint64_t seed,
                                 int retry_budget = kDefaultRetryBudget);

// Loops split in three, all but one edge of each parallel class split at its midpoint.
struct Preprocessed {
    AbstractTropicalCurve curve;
    int inserted = 0;
};
Preprocessed remove_loops_and_parallels(const AbstractTropicalCurve& curve);

// Directions used along each planned edge generate Z^n.
bool edge_directions_span(const ImmersionPlan& plan);
// Every coordinate denominator divides the bound implied by the plan's inputs.
bool vertices_rational_bounded(const ImmersionPlan& plan, const std::vector<PointN>& points);
// Vertices on >= 3 bounded segments only neighbour vertices on <= 2.
bool trivalent_vertices_separated(const SpatialTropicalCurve& curve);

}  // namespace tropcross
