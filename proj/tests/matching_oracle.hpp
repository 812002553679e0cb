#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "flood/persistence.hpp"
#include "flood/rng.hpp"

namespace flood::testing {

// Bottleneck distance by enumerating every partial matching between a and b;
// unmatched points go to the diagonal (infinite cost for essential points).
inline double exhaustive_bottleneck(const std::vector<PersistenceDiagram::Point>& a,
                                    const std::vector<PersistenceDiagram::Point>& b) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto diag = [](const PersistenceDiagram::Point& p) { return std::isinf(p.second) ? inf : (p.second - p.first) / 2; };
  auto cost = [&](const PersistenceDiagram::Point& p, const PersistenceDiagram::Point& q) {
    if (std::isinf(p.second) != std::isinf(q.second)) return inf;
    const double dd = std::isinf(p.second) ? 0.0 : std::abs(p.second - q.second);
    return std::max(std::abs(p.first - q.first), dd);
  };
  std::vector<bool> used(b.size(), false);
  double best = inf;
  auto rec = [&](auto&& self, std::size_t i, double acc) -> void {
    if (acc >= best) return;
    if (i == a.size()) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!used[j]) acc = std::max(acc, diag(b[j]));
      }
      best = std::min(best, acc);
      return;
    }
    self(self, i + 1, std::max(acc, diag(a[i])));
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, i + 1, std::max(acc, cost(a[i], b[j])));
      used[j] = false;
    }
  };
  rec(rec, 0, 0.0);
  if (std::isinf(best)) {
    // Only reachable when the essential counts differ.
    return inf;
  }
  return best;
}

// Up to max_points points; births and deaths on a coarse lattice so ties and
// equal costs occur, with occasional essential points.
inline std::vector<PersistenceDiagram::Point> random_diagram(Rng& rng, std::size_t max_points,
                                                             bool essentials = true) {
  std::vector<PersistenceDiagram::Point> d;
  const std::size_t n = rng.below(max_points + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = static_cast<double>(rng.below(20)) / 4;
    if (essentials && rng.below(6) == 0) {
      d.emplace_back(b, std::numeric_limits<double>::infinity());
    } else {
      d.emplace_back(b, b + static_cast<double>(rng.below(12)) / 4);
    }
  }
  return d;
}

}  // namespace flood::testing
