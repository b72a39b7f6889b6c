#pragma once

#include "tropcross/divisor.hpp"
#include "tropcross/immersion_builder.hpp"
#include "tropcross/metric_graph.hpp"
#include "tropcross/newton_polygon.hpp"
#include "tropcross/plane_curve.hpp"
#include "tropcross/spatial_curve.hpp"

#include <string>

namespace tropcross {

// All readers throw Error(Format) on malformed input and let validation errors through.
// Writers emit two-space indented JSON with a stable key order.

std::string to_json(const AbstractTropicalCurve& curve);
AbstractTropicalCurve abstract_curve_from_json(const std::string& text);

std::string to_json(const PlaneTropicalCurve& curve);
PlaneTropicalCurve plane_curve_from_json(const std::string& text);

std::string to_json(const SpatialTropicalCurve& curve);
SpatialTropicalCurve spatial_curve_from_json(const std::string& text);

// Points are "v:id" or "e:index@offset" with the offset measured as in CurvePoint.
std::string to_json(const Divisor& divisor);
Divisor divisor_from_json(const std::string& text);
std::string point_label(const CurvePoint& p);
CurvePoint parse_point_label(const std::string& label);

std::string to_json(const BuildReport& report);
std::string to_json(const DualSubdivision& dual);

}  // namespace tropcross
