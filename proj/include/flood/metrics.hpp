#pragma once

#include <span>

#include "flood/persistence.hpp"
#include "flood/point_cloud.hpp"

namespace flood {

/// Exact bottleneck distance between two multisets of (birth, death) points.
/// Finite points may be matched to the diagonal; points with infinite death
/// only to each other, so unequal counts of those give +inf.
double bottleneck_distance(std::span<const PersistenceDiagram::Point> a,
                           std::span<const PersistenceDiagram::Point> b);

inline double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int k) {
  return bottleneck_distance(a[k], b[k]);
}

/// Symmetric Hausdorff distance. Throws ErrorKind::argument on empty input.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

}  // namespace flood
