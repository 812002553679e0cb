#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>

#include "flood/point_cloud.hpp"

namespace flood {

/// A simplex of dimension <= 3 as a sorted tuple of vertex ids. Unused
/// slots hold -1, so the derived ordering is lexicographic within a
/// dimension.
struct Simplex {
  std::array<Index, 4> v{-1, -1, -1, -1};
  int dim = -1;

  Simplex() = default;
  Simplex(std::initializer_list<Index> ids) {
    std::size_t i = 0;
    for (Index id : ids) v[i++] = id;
    dim = static_cast<int>(ids.size()) - 1;
    std::sort(v.begin(), v.begin() + ids.size());
  }
  static Simplex from_span(std::span<const Index> ids) {
    Simplex s;
    std::copy(ids.begin(), ids.end(), s.v.begin());
    s.dim = static_cast<int>(ids.size()) - 1;
    std::sort(s.v.begin(), s.v.begin() + ids.size());
    return s;
  }

  std::span<const Index> vertices() const noexcept { return {v.data(), static_cast<std::size_t>(dim + 1)}; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(dim + 1); }

  /// Face spanned by the vertices selected by `mask` (bit j = j-th vertex).
  Simplex face(unsigned mask) const {
    Simplex s;
    int k = 0;
    for (int j = 0; j <= dim; ++j) {
      if (mask & (1u << j)) s.v[k++] = v[j];
    }
    s.dim = k - 1;
    return s;
  }

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = static_cast<std::size_t>(s.dim) * 0x9e3779b97f4a7c15ULL;
    for (Index x : s.v) h = (h ^ static_cast<std::size_t>(x + 1)) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace flood
