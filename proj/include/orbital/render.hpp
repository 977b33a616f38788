#pragma once

#include "orbital/point_cloud.hpp"

#include <string>

namespace orbital {

/// Binary PPM (P6) of the closed unit disk: white background, the unit
/// circle as a 1px black ring, cloud points as black discs of point_radius
/// pixels. Point (x, y) goes to column floor((x + 1) / 2 * size) and row
/// size - 1 - floor((y + 1) / 2 * size), clamped to the image.
std::string render_ppm(const PointCloud& cloud, int size, int point_radius = 0);

} // namespace orbital
