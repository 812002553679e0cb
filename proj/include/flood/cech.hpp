#pragma once

#include <cstddef>

#include "flood/filtered_complex.hpp"
#include "flood/geometry.hpp"
#include "flood/point_cloud.hpp"

namespace flood {

/// Largest point count cech_filtration accepts.
inline constexpr std::size_t cech_max_points = 24;

/// Smallest ball containing all points (Welzl's recursion). Points should be
/// in general position; a degenerate support set is skipped.
EnclosingBall min_enclosing_ball(const PointCloud& points);

/// Every subset of at most max_dim + 1 points, valued by the radius of its
/// smallest enclosing ball. Refuses (ErrorKind::guard) more than
/// `max_points` points or max_dim outside 0..3.
FilteredComplex cech_filtration(const PointCloud& x, int max_dim, std::size_t max_points = cech_max_points);

}  // namespace flood
