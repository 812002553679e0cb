#pragma once

#include <algorithm>
#include <vector>

#include "flood/filtered_complex.hpp"
#include "flood/persistence.hpp"

namespace flood::testing {

// Dense textbook reduction over Z/2: left to right, no optimizations.
inline PersistenceDiagram naive_diagram(const FilteredComplex& fc) {
  const std::size_t n = fc.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t j = 0; j < n; ++j) {
    const Simplex& s = fc.simplex(j);
    if (s.dim == 0) continue;
    const unsigned full = (1u << (s.dim + 1)) - 1;
    for (int f = 0; f <= s.dim; ++f) m[j][fc.position(s.face(full & ~(1u << f)))] = true;
  }
  auto low = [&](std::size_t j) -> long {
    for (long i = static_cast<long>(n) - 1; i >= 0; --i) {
      if (m[j][i]) return i;
    }
    return -1;
  };
  for (std::size_t j = 0; j < n; ++j) {
    bool changed = true;
    while (changed) {
      changed = false;
      const long l = low(j);
      if (l < 0) break;
      for (std::size_t i = 0; i < j; ++i) {
        if (low(i) == l) {
          for (std::size_t r = 0; r < n; ++r) m[j][r] = m[j][r] != m[i][r];
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<bool> is_birth_of_pair(n, false);
  std::vector<std::vector<PersistenceDiagram::Point>> dims(std::max(fc.max_dim() + 1, 1));
  for (std::size_t j = 0; j < n; ++j) {
    const long l = low(j);
    if (l >= 0) {
      is_birth_of_pair[l] = true;
      dims[fc.dim(l)].emplace_back(fc.value(l), fc.value(j));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (low(j) < 0 && !is_birth_of_pair[j]) dims[fc.dim(j)].emplace_back(fc.value(j), infinite_death);
  }
  return PersistenceDiagram(std::move(dims));
}

}  // namespace flood::testing
