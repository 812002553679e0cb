#include "flood/predicates.hpp"

#include <gmpxx.h>

#include <array>
#include <atomic>
#include <cmath>
#include <limits>

#include "flood/error.hpp"

namespace flood::predicates {

namespace {

std::atomic<unsigned long long> fallbacks{0};

constexpr int max_n = 4;

template <class T>
using Matrix = std::array<std::array<T, max_n>, max_n>;

// Cofactor expansion along the first row over the given column set.
template <class T>
T det_rec(const Matrix<T>& m, int n, int row, unsigned cols) {
  if (row == n - 1) {
    for (int c = 0; c < n; ++c) {
      if (cols & (1u << c)) return m[row][c];
    }
  }
  T sum = 0;
  int sign = 1;
  for (int c = 0; c < n; ++c) {
    if (!(cols & (1u << c))) continue;
    T term = m[row][c] * det_rec(m, n, row + 1, cols & ~(1u << c));
    if (sign > 0) {
      sum += term;
    } else {
      sum -= term;
    }
    sign = -sign;
  }
  return sum;
}

template <class T>
T det(const Matrix<T>& m, int n) {
  return det_rec(m, n, 0, (1u << n) - 1);
}

double perm_rec(const Matrix<double>& m, int n, int row, unsigned cols) {
  if (row == n - 1) {
    for (int c = 0; c < n; ++c) {
      if (cols & (1u << c)) return std::fabs(m[row][c]);
    }
  }
  double sum = 0;
  for (int c = 0; c < n; ++c) {
    if (cols & (1u << c)) sum += std::fabs(m[row][c]) * perm_rec(m, n, row + 1, cols & ~(1u << c));
  }
  return sum;
}

int sign_of(const mpq_class& v) { return sgn(v); }

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Generous multiple of the unit roundoff covering entry rounding (differences
// and lifted squares), the products, and the summation of at most 24 terms.
constexpr double filter_factor = 128.0 * std::numeric_limits<double>::epsilon();

}  // namespace

int orientation(std::span<const double> points, int dim) {
  require(dim == 2 || dim == 3, "orientation supports dimensions 2 and 3");
  require(points.size() == static_cast<std::size_t>((dim + 1) * dim), "orientation needs dim + 1 points");
  Matrix<double> m{};
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m[r][c] = points[(r + 1) * dim + c] - points[c];
  }
  const double value = det(m, dim);
  const double bound = filter_factor * perm_rec(m, dim, 0, (1u << dim) - 1);
  if (std::fabs(value) > bound) return sign_of(value);

  fallbacks.fetch_add(1, std::memory_order_relaxed);
  Matrix<mpq_class> e{};
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) e[r][c] = mpq_class(points[(r + 1) * dim + c]) - mpq_class(points[c]);
  }
  return sign_of(det(e, dim));
}

int in_circumsphere(std::span<const double> points, std::span<const double> query, int dim) {
  require(dim == 2 || dim == 3, "in_circumsphere supports dimensions 2 and 3");
  require(points.size() == static_cast<std::size_t>((dim + 1) * dim), "in_circumsphere needs dim + 1 points");
  const int orient = orientation(points, dim);
  require(orient != 0, "in_circumsphere on an affinely dependent point set");
  const int n = dim + 1;
  // Lifted matrix with rows [p_i - q, |p_i - q|^2]. Its sign times the
  // orientation sign is (-1)^dim when q is inside.
  Matrix<double> m{};
  for (int r = 0; r < n; ++r) {
    double lift = 0.0;
    for (int c = 0; c < dim; ++c) {
      m[r][c] = points[r * dim + c] - query[c];
      lift += m[r][c] * m[r][c];
    }
    m[r][dim] = lift;
  }
  const double value = det(m, n);
  const double bound = filter_factor * perm_rec(m, n, 0, (1u << n) - 1);
  int lifted;
  if (std::fabs(value) > bound) {
    lifted = sign_of(value);
  } else {
    fallbacks.fetch_add(1, std::memory_order_relaxed);
    Matrix<mpq_class> e{};
    for (int r = 0; r < n; ++r) {
      mpq_class lift = 0;
      for (int c = 0; c < dim; ++c) {
        e[r][c] = mpq_class(points[r * dim + c]) - mpq_class(query[c]);
        lift += e[r][c] * e[r][c];
      }
      e[r][dim] = lift;
    }
    lifted = sign_of(det(e, n));
  }
  return (dim == 2 ? 1 : -1) * lifted * orient;
}

unsigned long long exact_fallback_count() noexcept { return fallbacks.load(std::memory_order_relaxed); }

}  // namespace flood::predicates
