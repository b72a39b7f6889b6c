#pragma once

#include "tropcross/metric_graph.hpp"
#include "tropcross/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tropcross {

using PointN = std::vector<Rational>;

struct SpatialSegment {
    std::size_t a = 0;
    std::size_t b = 0;
    IVec dir;
    Rational length;
};

struct SpatialRay {
    std::size_t base = 0;
    IVec dir;
};

struct ElementRef {
    bool is_ray = false;
    std::size_t index = 0;
};

struct ElementContact {
    ElementRef first;
    ElementRef second;
};

// Embedded curve in R^n: elements meet only at shared endpoints.
class SpatialTropicalCurve {
public:
    SpatialTropicalCurve() = default;

    // Merges coincident points; throws Error(Validation) if any two elements meet away
    // from a shared endpoint.
    static SpatialTropicalCurve from_arrangement(std::size_t dim, const std::vector<PointN>& points,
                                                 const std::vector<std::pair<std::size_t, std::size_t>>& segments,
                                                 const std::vector<SpatialRay>& rays);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<PointN>& points() const noexcept { return points_; }
    const std::vector<SpatialSegment>& segments() const noexcept { return segments_; }
    const std::vector<SpatialRay>& rays() const noexcept { return rays_; }
    // Outgoing primitive directions at a vertex.
    std::vector<IVec> directions(std::size_t v) const;
    std::size_t bounded_degree(std::size_t v) const;

private:
    std::size_t dim_ = 0;
    std::vector<PointN> points_;
    std::vector<SpatialSegment> segments_;
    std::vector<SpatialRay> rays_;
};

// Exhaustive exact check; empty result means injective.
std::vector<ElementContact> find_contacts(const SpatialTropicalCurve& curve);

// Balanced, and any valence−1 of the directions extend to a basis of Z^n.
bool is_smooth_vertex(const SpatialTropicalCurve& curve, std::size_t v);
bool is_smooth(const SpatialTropicalCurve& curve);

// Rays become INFINITE edges; throws if the curve is disconnected.
AbstractTropicalCurve to_abstract(const SpatialTropicalCurve& curve);

// gcd of the maximal minors of the column set, 0 when rank-deficient.
BigInt maximal_minor_gcd(const std::vector<IVec>& columns, std::size_t dim);

}  // namespace tropcross
