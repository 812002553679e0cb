#pragma once

#include <span>

namespace flood::predicates {

/// Sign of det[p1 - p0, ..., pD - p0] for D + 1 points in R^D (D = 2, 3),
/// given as consecutive rows of `dim` coordinates. Exact: a floating-point
/// evaluation is trusted only when its error bound excludes zero, and
/// otherwise the determinant is recomputed in rational arithmetic.
int orientation(std::span<const double> points, int dim);

/// +1 if `query` lies strictly inside the circumsphere of the D + 1 points,
/// -1 if strictly outside, 0 if on it. Independent of the points' order.
/// The points must be affinely independent. Exact.
int in_circumsphere(std::span<const double> points, std::span<const double> query, int dim);

/// Number of evaluations that fell through to exact arithmetic.
unsigned long long exact_fallback_count() noexcept;

}  // namespace flood::predicates
