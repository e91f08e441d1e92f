#pragma once

#include <string>

#include "polyembed/regions.hpp"

namespace polyembed {

// Color-coded raster of a region table. Palette follows the region legend:
// strict = beige, inconsistent = pink, hallucination = auburn, boundary =
// gray; cells outside the polytope are left unpainted.
std::string svg_region_map(const RegionTable& table);

}  // namespace polyembed
