#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "flood/filtered_complex.hpp"
#include "flood/rng.hpp"

namespace flood::testing {

// Random complex closed under faces, at most `max_simplices` simplices, with
// monotone integer-valued filtration (ties are frequent on purpose).
inline FilteredComplex random_filtered_complex(Rng& rng, std::size_t max_simplices = 200) {
  const Index n = 3 + static_cast<Index>(rng.below(8));
  std::set<Simplex> all;
  for (Index v = 0; v < n; ++v) all.insert(Simplex{v});
  const int attempts = 1 + static_cast<int>(rng.below(40));
  for (int a = 0; a < attempts; ++a) {
    const int k = std::min(1 + static_cast<int>(rng.below(3)), static_cast<int>(n) - 1);
    std::set<Index> verts;
    while (static_cast<int>(verts.size()) < k + 1) verts.insert(static_cast<Index>(rng.below(n)));
    const std::vector<Index> vv(verts.begin(), verts.end());
    const Simplex s = Simplex::from_span(vv);
    std::set<Simplex> closure;
    const unsigned full = (1u << (k + 1)) - 1;
    for (unsigned mask = 1; mask <= full; ++mask) closure.insert(s.face(mask));
    std::set<Simplex> merged = all;
    merged.insert(closure.begin(), closure.end());
    if (merged.size() > max_simplices) break;
    all.swap(merged);
  }
  // Process by dimension so facets are valued first.
  std::vector<Simplex> list(all.begin(), all.end());
  std::stable_sort(list.begin(), list.end(), [](const Simplex& a, const Simplex& b) { return a.dim < b.dim; });
  std::vector<double> values;
  std::vector<Simplex> done;
  for (const auto& s : list) {
    double v = static_cast<double>(rng.below(6));
    if (s.dim > 0) {
      const unsigned full = (1u << (s.dim + 1)) - 1;
      for (int j = 0; j <= s.dim; ++j) {
        const Simplex f = s.face(full & ~(1u << j));
        const auto it = std::find(done.begin(), done.end(), f);
        v = std::max(v, values[it - done.begin()]);
      }
    }
    done.push_back(s);
    values.push_back(v);
  }
  return FilteredComplex(std::move(done), std::move(values));
}

}  // namespace flood::testing
