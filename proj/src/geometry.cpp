#include "flood/geometry.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "flood/error.hpp"

namespace flood {

std::vector<Index> farthest_point_sampling(const PointCloud& cloud, std::size_t k, Index start,
                                           std::vector<double>* insertion_distances) {
  const std::size_t n = cloud.size();
  require(k >= 1, "farthest point sampling needs k >= 1");
  require(k <= n, "farthest point sampling: k = " + std::to_string(k) + " exceeds cloud size " +
                      std::to_string(n));
  require(start >= 0 && static_cast<std::size_t>(start) < n, "farthest point sampling: start out of range");

  std::vector<Index> picks;
  picks.reserve(k);
  if (insertion_distances) {
    insertion_distances->clear();
    insertion_distances->reserve(k);
  }
  // Points are grouped by their nearest landmark. A new landmark c cannot
  // get closer to any point of group a when |c - a| >= 2 max_{p in a} |p - a|,
  // so such groups are skipped whole. Members carry a copy of their
  // coordinates to keep the scans sequential in memory.
  struct Member {
    std::array<double, 3> p;
    double d2;
    Index i;
  };
  struct Group {
    Index landmark;
    std::vector<Member> members;
    double max_d2 = -1.0;
    Index arg = -1;
  };
  auto refresh = [](Group& g) {
    g.max_d2 = -1.0;
    g.arg = -1;
    for (const auto& m : g.members) {
      if (m.d2 > g.max_d2 || (m.d2 == g.max_d2 && m.i < g.arg)) {
        g.max_d2 = m.d2;
        g.arg = m.i;
      }
    }
  };
  const int dim = cloud.dim();
  auto d2_to = [dim](const std::array<double, 3>& p, std::span<const double> c) {
    double s = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double t = p[j] - c[j];
      s += t * t;
    }
    return s;
  };
  std::vector<Group> groups;
  {
    Group g{start, std::vector<Member>(n)};
    const auto c = cloud.point(start);
    for (std::size_t i = 0; i < n; ++i) {
      auto& m = g.members[i];
      m.p = {};
      const auto q = cloud.point(i);
      std::copy(q.begin(), q.end(), m.p.begin());
      m.i = static_cast<Index>(i);
      m.d2 = squared_distance(q, c);
    }
    refresh(g);
    groups.push_back(std::move(g));
  }
  picks.push_back(start);
  if (insertion_distances) insertion_distances->push_back(std::numeric_limits<double>::infinity());
  std::vector<Member> keep;
  while (picks.size() < k) {
    Index current = -1;
    double current_d2 = -1.0;
    for (const auto& g : groups) {
      if (g.max_d2 > current_d2 || (g.max_d2 == current_d2 && g.arg < current)) {
        current_d2 = g.max_d2;
        current = g.arg;
      }
    }
    picks.push_back(current);
    if (insertion_distances) insertion_distances->push_back(std::sqrt(current_d2));
    if (picks.size() == k) break;

    const auto c = cloud.point(current);
    Group fresh{current, {}};
    for (auto& g : groups) {
      const double gap2 = squared_distance(cloud.point(g.landmark), c);
      if (gap2 > 4.0 * g.max_d2 * (1.0 + 1e-9)) continue;
      keep.clear();
      for (const auto& m : g.members) {
        const double d2 = d2_to(m.p, c);
        if (d2 < m.d2) {
          fresh.members.push_back(m);
          fresh.members.back().d2 = d2;
        } else {
          keep.push_back(m);
        }
      }
      if (keep.size() != g.members.size()) {
        g.members.swap(keep);
        refresh(g);
      }
    }
    refresh(fresh);
    groups.push_back(std::move(fresh));
  }
  return picks;
}

bool EnclosingBall::contains(std::span<const double> p, double tolerance) const {
  return distance(p, center) <= radius + tolerance;
}

EnclosingBall ritter_enclosing_ball(std::span<const double> vertex_coords, int dim) {
  const std::size_t count = vertex_coords.size() / dim;
  require(count >= 2, "enclosing ball needs at least two vertices");
  auto vertex = [&](std::size_t i) { return vertex_coords.subspan(i * dim, dim); };
  std::size_t a = 0, b = 1;
  double longest = -1.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double d2 = squared_distance(vertex(i), vertex(j));
      if (d2 > longest) {
        longest = d2;
        a = i;
        b = j;
      }
    }
  }
  EnclosingBall ball;
  ball.center.resize(dim);
  for (int c = 0; c < dim; ++c) ball.center[c] = 0.5 * (vertex(a)[c] + vertex(b)[c]);
  for (std::size_t i = 0; i < count; ++i) ball.radius = std::max(ball.radius, distance(vertex(i), ball.center));
  return ball;
}

EnclosingBall ritter_enclosing_ball(const PointCloud& simplex_vertices) {
  return ritter_enclosing_ball(simplex_vertices.coords(), simplex_vertices.dim());
}

std::size_t grid_point_count(int simplex_dim, int resolution) {
  // C(m + k, k) computed incrementally; exact for the sizes used here.
  std::size_t result = 1;
  for (int i = 1; i <= simplex_dim; ++i) result = result * (resolution + i) / i;
  return result;
}

BarycentricGridTemplate::BarycentricGridTemplate(int simplex_dim, int resolution)
    : simplex_dim_(simplex_dim), resolution_(resolution) {
  require(simplex_dim >= 0 && simplex_dim <= 3, "grid template supports simplex dimensions 0..3");
  require(resolution >= 1 && resolution <= 4096, "grid resolution must lie in 1..4096");
  const int k1 = arity();

  std::vector<std::uint16_t> raw;
  std::vector<std::uint16_t> tuple(k1, 0);
  // Lexicographic enumeration of compositions of m into k1 parts.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == k1 - 1) {
      tuple[pos] = static_cast<std::uint16_t>(remaining);
      raw.insert(raw.end(), tuple.begin(), tuple.end());
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      tuple[pos] = static_cast<std::uint16_t>(v);
      self(self, pos + 1, remaining - v);
    }
  };
  rec(rec, 0, resolution);

  const std::size_t count = raw.size() / k1;
  std::vector<std::uint8_t> raw_support(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    for (int j = 0; j < k1; ++j) {
      if (raw[i * k1 + j] != 0) raw_support[i] |= static_cast<std::uint8_t>(1u << j);
    }
  }
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const int px = std::popcount(raw_support[x]), py = std::popcount(raw_support[y]);
    if (px != py) return px < py;
    return raw_support[x] < raw_support[y];
  });

  numerators_.reserve(raw.size());
  weights_.reserve(raw.size());
  support_.reserve(count);
  for (std::size_t i : order) {
    for (int j = 0; j < k1; ++j) {
      numerators_.push_back(raw[i * k1 + j]);
      weights_.push_back(static_cast<double>(raw[i * k1 + j]) / resolution);
    }
    support_.push_back(raw_support[i]);
  }

  face_index_map_.resize(std::size_t{1} << k1);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t mask = 1; mask < face_index_map_.size(); ++mask) {
      if ((support_[i] & ~mask) == 0) face_index_map_[mask].push_back(static_cast<Index>(i));
    }
  }
}

void barycentric_grid_into(const BarycentricGridTemplate& tmpl, std::span<const double> vertex_coords,
                           int dim, std::span<double> out) {
  const int k1 = tmpl.arity();
  require(vertex_coords.size() == static_cast<std::size_t>(k1 * dim),
          "vertex count does not match the template's simplex dimension");
  require(out.size() >= tmpl.size() * dim, "grid output buffer too small");
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    const auto w = tmpl.weights(i);
    double* p = out.data() + i * dim;
    for (int c = 0; c < dim; ++c) {
      double s = 0.0;
      for (int j = 0; j < k1; ++j) {
        if (w[j] != 0.0) s += w[j] * vertex_coords[j * dim + c];
      }
      p[c] = s;
    }
  }
}

PointCloud barycentric_grid(const BarycentricGridTemplate& tmpl, const PointCloud& simplex_vertices) {
  require(simplex_vertices.size() == static_cast<std::size_t>(tmpl.arity()),
          "vertex count does not match the template's simplex dimension");
  const int dim = simplex_vertices.dim();
  std::vector<double> out(tmpl.size() * dim);
  barycentric_grid_into(tmpl, simplex_vertices.coords(), dim, out);
  return PointCloud(dim, std::move(out));
}

double grid_covering_bound(std::span<const double> vertex_coords, int dim, int resolution) {
  require(resolution >= 1, "grid resolution must be >= 1");
  const std::size_t count = vertex_coords.size() / dim;
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      sum += squared_distance(vertex_coords.subspan(i * dim, dim), vertex_coords.subspan(j * dim, dim));
    }
  }
  return std::sqrt(sum) / resolution;
}

double grid_covering_bound(const PointCloud& simplex_vertices, int resolution) {
  return grid_covering_bound(simplex_vertices.coords(), simplex_vertices.dim(), resolution);
}

std::size_t random_covering_count(int simplex_dim, double eps, double delta) {
  require(eps > 0.0 && delta > 0.0 && delta < 1.0, "random covering needs eps > 0 and 0 < delta < 1");
  if (simplex_dim == 0) return 1;
  const double cells = std::pow(4.0 / eps, simplex_dim);
  const double n = cells * (simplex_dim * std::log(4.0 / eps) + std::log(1.0 / delta));
  return static_cast<std::size_t>(std::ceil(n));
}

std::vector<double> uniform_barycentric(Rng& rng, int arity) {
  std::vector<double> w(arity);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.exponential();
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

double directed_hausdorff(const PointCloud& a, const PointCloud& b) {
  require(!a.empty() && !b.empty(), "directed Hausdorff distance of an empty set");
  require(a.dim() == b.dim(), "directed Hausdorff distance between clouds of different dimension");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size() && best > worst; ++j) {
      best = std::min(best, squared_distance(a.point(i), b.point(j)));
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace flood
