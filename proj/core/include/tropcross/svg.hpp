#pragma once

#include "tropcross/newton_polygon.hpp"
#include "tropcross/plane_curve.hpp"

#include <string>

namespace tropcross {

struct SvgOptions {
    int width = 480;  // pixels; height follows the aspect ratio
    double margin = 0.2;
};

// Viewport is the bounding box of the vertices widened by `margin` per side; rays are
// clipped to it exactly. Nodes carry their multiplicity as a label.
std::string render_curve_svg(const PlaneTropicalCurve& curve, const SvgOptions& options = {});

// Newton polygon with cells shaded by kind and lattice points marked.
std::string render_dual_svg(const DualSubdivision& dual, const SvgOptions& options = {});

}  // namespace tropcross
