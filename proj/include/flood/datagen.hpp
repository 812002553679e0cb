#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "flood/point_cloud.hpp"

namespace flood {

enum class CircleMode { uniform_angle, random };

/// n >= 3 points on the unit circle; uniform_angle puts point j at 2*pi*j/n.
PointCloud gen_circle(std::size_t n, CircleMode mode = CircleMode::uniform_angle, std::uint64_t seed = 0);

struct Void {
  std::array<double, 3> center{};
  double radius = 0.0;
};

struct SwissCheeseParams {
  std::size_t points = 0;
  std::size_t voids = 0;
  double box = 5.0;
  double min_radius = 0.1;
  double max_radius = 0.5;
  /// Minimum gap between voids and between a void and the box boundary.
  double margin = 1e-3;
  std::uint64_t seed = 0;
  /// Center draws allowed per void before giving up.
  std::size_t max_attempts = 100000;
};

struct SwissCheese {
  PointCloud cloud;
  std::vector<Void> voids;
};

/// Uniform points in [0, box]^3 outside `voids` disjoint balls with radii
/// uniform in [min_radius, max_radius]. Throws ErrorKind::generation when the
/// balls cannot be placed.
SwissCheese gen_swisscheese(const SwissCheeseParams& params);

/// Area-uniform sample of the torus with radii major > minor > 0.
PointCloud gen_torus(std::size_t n, double major = 2.0, double minor = 0.5, std::uint64_t seed = 0);

}  // namespace flood
