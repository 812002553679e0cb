#pragma once

#include <vector>

#include "flood/simplex.hpp"

namespace flood {

/// Simplices with filtration values in the total order
/// (value, dimension, lexicographic vertices).
class FilteredComplex {
 public:
  FilteredComplex() = default;

  /// Sorts into the canonical order. Values must be finite and >= 0.
  FilteredComplex(std::vector<Simplex> simplices, std::vector<double> values);

  std::size_t size() const noexcept { return simplices_.size(); }
  bool empty() const noexcept { return simplices_.empty(); }
  const Simplex& simplex(std::size_t i) const { return simplices_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  int dim(std::size_t i) const { return simplices_[i].dim; }
  int max_dim() const noexcept;

  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Position of `s` in the order, or -1.
  Index position(const Simplex& s) const;

  /// Throws ErrorKind::integrity unless every face of every simplex is
  /// present with a value no larger than the simplex's.
  void validate() const;

 private:
  std::vector<Simplex> simplices_;
  std::vector<double> values_;
  std::vector<Index> lookup_;  // positions sorted by simplex, for position()
};

}  // namespace flood
