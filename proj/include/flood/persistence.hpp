#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "flood/filtered_complex.hpp"

namespace flood {

/// Column j lists, in increasing order, the positions of the facets of
/// simplex j in the filtration order.
struct BoundaryMatrix {
  std::vector<std::vector<Index>> columns;
  std::vector<int> dims;

  std::size_t size() const noexcept { return columns.size(); }
};

/// Throws ErrorKind::integrity if a facet is missing or ordered after its
/// coface.
BoundaryMatrix boundary_matrix(const FilteredComplex& fc);

/// A birth/death index pair; death == -1 marks an essential class.
struct PersistencePair {
  int dim = 0;
  Index birth = -1;
  Index death = -1;
};

struct ReductionOptions {
  /// Clearing: reduce dimensions top-down and skip columns known to vanish.
  bool twist = true;
  /// Keep pairs whose birth and death values coincide.
  bool include_zero_persistence = false;
};

/// Column reduction over Z/2. Returns all pairs (zero-persistence included)
/// sorted by (dim, birth).
std::vector<PersistencePair> persistence_pairs(const BoundaryMatrix& bm, bool twist = true);

/// Multisets of (birth, death) per homology dimension; essential classes
/// have death = +infinity. Points are sorted by (birth, death).
class PersistenceDiagram {
 public:
  using Point = std::pair<double, double>;

  PersistenceDiagram() = default;
  explicit PersistenceDiagram(std::vector<std::vector<Point>> dims);

  /// Points in dimension k (empty if k is beyond the stored range).
  const std::vector<Point>& operator[](int k) const;
  int dims() const noexcept { return static_cast<int>(dims_.size()); }
  std::size_t size() const noexcept;

  void add(int k, double birth, double death);
  void sort();

  friend bool operator==(const PersistenceDiagram&, const PersistenceDiagram&) = default;

 private:
  std::vector<std::vector<Point>> dims_;
};

inline constexpr double infinite_death = std::numeric_limits<double>::infinity();

PersistenceDiagram reduce_and_extract(const BoundaryMatrix& bm, const FilteredComplex& fc,
                                      const ReductionOptions& options = {});

inline PersistenceDiagram persistence_diagram(const FilteredComplex& fc, const ReductionOptions& options = {}) {
  return reduce_and_extract(boundary_matrix(fc), fc, options);
}

/// Number of dimension-k bars alive at r: birth <= r < death.
std::size_t betti_at(const PersistenceDiagram& dgm, double r, int k);

}  // namespace flood
