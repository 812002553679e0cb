#include "flood/datagen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "flood/error.hpp"
#include "flood/rng.hpp"

namespace flood {

PointCloud gen_circle(std::size_t n, CircleMode mode, std::uint64_t seed) {
  require(n >= 3, "circle needs at least 3 points");
  Rng rng(seed);
  std::vector<double> c;
  c.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = mode == CircleMode::uniform_angle
                         ? 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)
                         : rng.uniform(0.0, 2.0 * std::numbers::pi);
    c.push_back(std::cos(t));
    c.push_back(std::sin(t));
  }
  return PointCloud(2, std::move(c));
}

SwissCheese gen_swisscheese(const SwissCheeseParams& p) {
  require(p.box > 0, "box side must be positive");
  require(p.min_radius > 0 && p.min_radius <= p.max_radius, "void radii need 0 < min <= max");
  require(p.margin >= 0, "margin must be non-negative");
  require(2 * (p.max_radius + p.margin) < p.box, "voids do not fit in the box");
  Rng rng(p.seed);
  SwissCheese out;
  for (std::size_t v = 0; v < p.voids; ++v) {
    const double r = rng.uniform(p.min_radius, p.max_radius);
    const double lo = r + p.margin, hi = p.box - r - p.margin;
    bool placed = false;
    for (std::size_t attempt = 0; attempt < p.max_attempts && !placed; ++attempt) {
      Void cand{{rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)}, r};
      placed = true;
      for (const auto& o : out.voids) {
        double d2 = 0.0;
        for (int c = 0; c < 3; ++c) d2 += (cand.center[c] - o.center[c]) * (cand.center[c] - o.center[c]);
        const double gap = cand.radius + o.radius + p.margin;
        if (d2 < gap * gap) {
          placed = false;
          break;
        }
      }
      if (placed) out.voids.push_back(cand);
    }
    if (!placed) {
      fail(ErrorKind::generation, "could not place void " + std::to_string(v + 1) + " of " +
                                      std::to_string(p.voids) + " after " + std::to_string(p.max_attempts) +
                                      " attempts");
    }
  }
  std::vector<double> c;
  c.reserve(3 * p.points);
  while (c.size() < 3 * p.points) {
    const std::array<double, 3> q{rng.uniform(0, p.box), rng.uniform(0, p.box), rng.uniform(0, p.box)};
    bool hole = false;
    for (const auto& v : out.voids) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) d2 += (q[k] - v.center[k]) * (q[k] - v.center[k]);
      if (d2 <= v.radius * v.radius) {
        hole = true;
        break;
      }
    }
    if (!hole) c.insert(c.end(), q.begin(), q.end());
  }
  out.cloud = PointCloud(3, std::move(c));
  return out;
}

PointCloud gen_torus(std::size_t n, double major, double minor, std::uint64_t seed) {
  require(minor > 0 && minor < major, "torus needs 0 < minor < major");
  Rng rng(seed);
  std::vector<double> c;
  c.reserve(3 * n);
  while (c.size() < 3 * n) {
    const double u = rng.uniform(0, 2 * std::numbers::pi);
    const double v = rng.uniform(0, 2 * std::numbers::pi);
    // Area element is proportional to major + minor cos v.
    if (rng.uniform() * (major + minor) > major + minor * std::cos(v)) continue;
    const double w = major + minor * std::cos(v);
    c.push_back(w * std::cos(u));
    c.push_back(w * std::sin(u));
    c.push_back(minor * std::sin(v));
  }
  return PointCloud(3, std::move(c));
}

}  // namespace flood
