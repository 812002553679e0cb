#include "flood/filtered_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flood/error.hpp"

namespace flood {

FilteredComplex::FilteredComplex(std::vector<Simplex> simplices, std::vector<double> values) {
  require(simplices.size() == values.size(), "simplex and value counts differ");
  for (double v : values) require(std::isfinite(v) && v >= 0.0, "filtration values must be finite and >= 0");
  std::vector<std::size_t> order(simplices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    if (simplices[a].dim != simplices[b].dim) return simplices[a].dim < simplices[b].dim;
    return simplices[a] < simplices[b];
  });
  simplices_.reserve(order.size());
  values_.reserve(order.size());
  for (std::size_t i : order) {
    simplices_.push_back(simplices[i]);
    values_.push_back(values[i]);
  }
  lookup_.resize(simplices_.size());
  std::iota(lookup_.begin(), lookup_.end(), Index{0});
  std::sort(lookup_.begin(), lookup_.end(), [&](Index a, Index b) { return simplices_[a] < simplices_[b]; });
  for (std::size_t i = 1; i < lookup_.size(); ++i) {
    if (simplices_[lookup_[i]] == simplices_[lookup_[i - 1]]) fail(ErrorKind::integrity, "duplicate simplex in complex");
  }
}

int FilteredComplex::max_dim() const noexcept {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, s.dim);
  return d;
}

Index FilteredComplex::position(const Simplex& s) const {
  const auto it = std::lower_bound(lookup_.begin(), lookup_.end(), s,
                                   [&](Index a, const Simplex& key) { return simplices_[a] < key; });
  if (it == lookup_.end() || simplices_[*it] != s) return -1;
  return *it;
}

void FilteredComplex::validate() const {
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i];
    if (s.dim == 0) continue;
    const unsigned all = (1u << (s.dim + 1)) - 1;
    for (int j = 0; j <= s.dim; ++j) {
      const Index f = position(s.face(all & ~(1u << j)));
      if (f < 0) fail(ErrorKind::integrity, "complex is not closed under faces");
      if (values_[f] > values_[i] || static_cast<std::size_t>(f) > i) {
        fail(ErrorKind::integrity, "filtration is not monotone: a face enters after its coface");
      }
    }
  }
}

}  // namespace flood
