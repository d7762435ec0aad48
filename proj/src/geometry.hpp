#pragma once

#include "bongard/scene.hpp"

namespace bongard {

/// Distance from (x, y) to the shape boundary, positive inside. For circles
/// and squares this is exact; for triangles it is the distance to the nearest
/// edge line.
double inside_depth(const Shape& shape, double x, double y);

}  // namespace bongard
