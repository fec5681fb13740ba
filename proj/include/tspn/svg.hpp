#pragma once

#include "tspn/geometry.hpp"

#include <string>
#include <vector>

namespace tspn {

// Deterministic 2D figure: instance lines in gray, one colored polyline per
// tour with waypoint markers. Throws DimensionUnsupported unless d == 2.
std::string render_svg(const std::vector<Hyperplane>& inst, const std::vector<Tour>& tours);

void emit_svg(const std::vector<Hyperplane>& inst, const std::vector<Tour>& tours, const std::string& path);

}  // namespace tspn
