#include "flood/cech.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "flood/error.hpp"

namespace flood {

namespace {

using Vec = std::array<double, 3>;

struct Ball {
  Vec center{};
  double r2 = -1.0;  // empty ball
};

// Ball with every point of `support` on its boundary, centered in their
// affine hull. Returns an empty ball if the support is affinely dependent.
Ball circumball(const std::vector<Vec>& support, int dim) {
  Ball b;
  if (support.empty()) return b;
  const Vec& p0 = support[0];
  const int k = static_cast<int>(support.size()) - 1;
  if (k == 0) {
    b.center = p0;
    b.r2 = 0.0;
    return b;
  }
  // Gram system A l = rhs with A_ij = u_i . u_j, rhs_i = |u_i|^2 / 2.
  std::array<std::array<double, 4>, 3> a{};
  std::array<Vec, 3> u{};
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < dim; ++c) u[i][c] = support[i + 1][c] - p0[c];
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int c = 0; c < dim; ++c) s += u[i][c] * u[j][c];
      a[i][j] = s;
    }
    a[i][k] = a[i][i] / 2;
  }
  double scale = 0.0;
  for (int i = 0; i < k; ++i) scale = std::max(scale, a[i][i]);
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) <= 1e-14 * scale) return Ball{};
    std::swap(a[piv], a[col]);
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  b.center = p0;
  for (int i = 0; i < k; ++i) {
    const double l = a[i][k] / a[i][i];
    for (int c = 0; c < dim; ++c) b.center[c] += l * u[i][c];
  }
  b.r2 = 0.0;
  for (const auto& p : support) {
    double s = 0.0;
    for (int c = 0; c < dim; ++c) s += (p[c] - b.center[c]) * (p[c] - b.center[c]);
    b.r2 = std::max(b.r2, s);
  }
  return b;
}

bool inside(const Ball& b, const Vec& p, int dim) {
  if (b.r2 < 0) return false;
  double s = 0.0;
  for (int c = 0; c < dim; ++c) s += (p[c] - b.center[c]) * (p[c] - b.center[c]);
  return s <= b.r2 * (1 + 1e-12) + 1e-300;
}

Ball welzl(const std::vector<Vec>& pts, std::size_t n, std::vector<Vec>& support, int dim) {
  if (n == 0 || static_cast<int>(support.size()) == dim + 1) return circumball(support, dim);
  const Vec& p = pts[n - 1];
  Ball b = welzl(pts, n - 1, support, dim);
  if (inside(b, p, dim)) return b;
  support.push_back(p);
  b = welzl(pts, n - 1, support, dim);
  support.pop_back();
  return b;
}

}  // namespace

EnclosingBall min_enclosing_ball(const PointCloud& points) {
  require(!points.empty(), "enclosing ball of an empty point set");
  const int dim = points.dim();
  std::vector<Vec> pts(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points.point(i);
    std::copy(p.begin(), p.end(), pts[i].begin());
  }
  std::vector<Vec> support;
  const Ball b = welzl(pts, pts.size(), support, dim);
  if (b.r2 < 0) fail(ErrorKind::degeneracy, "no enclosing ball found: points are not in general position");
  return EnclosingBall{std::vector<double>(b.center.begin(), b.center.begin() + dim), std::sqrt(b.r2)};
}

FilteredComplex cech_filtration(const PointCloud& x, int max_dim, std::size_t max_points) {
  if (x.size() > max_points) {
    fail(ErrorKind::guard, "Cech oracle refuses " + std::to_string(x.size()) + " points (limit " +
                               std::to_string(max_points) + ")");
  }
  if (max_dim < 0 || max_dim > 3) {
    fail(ErrorKind::guard, "Cech oracle supports max_dim 0..3, got " + std::to_string(max_dim));
  }
  const auto n = static_cast<Index>(x.size());
  // Lexicographic enumeration keeps `simplices` sorted for face lookup.
  std::vector<Simplex> simplices;
  std::vector<Index> ids;
  auto rec = [&](auto&& self, Index next) -> void {
    simplices.push_back(Simplex::from_span(ids));
    if (static_cast<int>(ids.size()) == max_dim + 1) return;
    for (Index v = next; v < n; ++v) {
      ids.push_back(v);
      self(self, v + 1);
      ids.pop_back();
    }
  };
  for (Index v = 0; v < n; ++v) {
    ids.assign(1, v);
    rec(rec, v + 1);
  }
  std::vector<double> values(simplices.size(), 0.0);
  for (int d = 1; d <= max_dim; ++d) {
    for (std::size_t i = 0; i < simplices.size(); ++i) {
      const Simplex& s = simplices[i];
      if (s.dim != d) continue;
      double v = min_enclosing_ball(x.select(s.vertices())).radius;
      // Radii are monotone under inclusion; rounding may break that by an ulp.
      const unsigned full = (1u << (d + 1)) - 1;
      for (int j = 0; j <= d; ++j) {
        const auto it = std::lower_bound(simplices.begin(), simplices.end(), s.face(full & ~(1u << j)));
        const double fv = values[it - simplices.begin()];
        if (fv > v) {
          if (fv - v > 1e-9 * std::max(1.0, fv)) fail(ErrorKind::integrity, "enclosing radius not monotone");
          v = fv;
        }
      }
      values[i] = v;
    }
  }
  return FilteredComplex(std::move(simplices), std::move(values));
}

}  // namespace flood
