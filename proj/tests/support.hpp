#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "flood/point_cloud.hpp"
#include "flood/rng.hpp"

namespace flood::testing {

inline PointCloud uniform_cloud(std::size_t n, int dim, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  Rng rng(seed);
  std::vector<double> c(n * dim);
  for (auto& x : c) x = rng.uniform(lo, hi);
  return PointCloud(dim, std::move(c));
}

inline PointCloud circle_cloud(std::size_t n) {
  std::vector<double> c;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    c.push_back(std::cos(t));
    c.push_back(std::sin(t));
  }
  return PointCloud(2, std::move(c));
}

}  // namespace flood::testing
