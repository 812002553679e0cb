#include "flood/persistence.hpp"

#include <algorithm>
#include <iterator>

#include "flood/error.hpp"

namespace flood {

BoundaryMatrix boundary_matrix(const FilteredComplex& fc) {
  BoundaryMatrix bm;
  bm.columns.resize(fc.size());
  bm.dims.resize(fc.size());
  for (std::size_t j = 0; j < fc.size(); ++j) {
    const Simplex& s = fc.simplex(j);
    bm.dims[j] = s.dim;
    if (s.dim == 0) continue;
    auto& col = bm.columns[j];
    const unsigned all = (1u << (s.dim + 1)) - 1;
    for (int f = 0; f <= s.dim; ++f) {
      const Index row = fc.position(s.face(all & ~(1u << f)));
      if (row < 0) fail(ErrorKind::integrity, "boundary matrix: facet missing from the complex");
      if (static_cast<std::size_t>(row) >= j || fc.value(row) > fc.value(j)) {
        fail(ErrorKind::integrity, "boundary matrix: facet ordered after its coface");
      }
      col.push_back(row);
    }
    std::sort(col.begin(), col.end());
  }
  return bm;
}

namespace {

void add_column(std::vector<Index>& target, const std::vector<Index>& source, std::vector<Index>& buffer) {
  buffer.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(buffer));
  target.swap(buffer);
}

}  // namespace

std::vector<PersistencePair> persistence_pairs(const BoundaryMatrix& bm, bool twist) {
  const std::size_t n = bm.size();
  std::vector<std::vector<Index>> reduced(n);
  std::vector<Index> owner(n, -1);  // row -> column whose lowest entry it is
  std::vector<bool> cleared(n, false);
  std::vector<Index> buffer;

  auto reduce = [&](std::size_t j) {
    auto& col = reduced[j];
    col = bm.columns[j];
    while (!col.empty() && owner[col.back()] >= 0) add_column(col, reduced[owner[col.back()]], buffer);
    if (!col.empty()) {
      owner[col.back()] = static_cast<Index>(j);
      cleared[col.back()] = true;
    }
  };

  if (twist) {
    const int top = bm.dims.empty() ? 0 : *std::max_element(bm.dims.begin(), bm.dims.end());
    for (int d = top; d >= 1; --d) {
      for (std::size_t j = 0; j < n; ++j) {
        if (bm.dims[j] == d && !cleared[j]) reduce(j);
      }
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) reduce(j);
  }

  std::vector<PersistencePair> pairs;
  for (std::size_t j = 0; j < n; ++j) {
    if (!reduced[j].empty()) {
      const Index birth = reduced[j].back();
      pairs.push_back({bm.dims[birth], birth, static_cast<Index>(j)});
    } else if (owner[j] < 0) {
      pairs.push_back({bm.dims[j], static_cast<Index>(j), -1});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.birth < b.birth;
  });
  return pairs;
}

PersistenceDiagram::PersistenceDiagram(std::vector<std::vector<Point>> dims) : dims_(std::move(dims)) { sort(); }

const std::vector<PersistenceDiagram::Point>& PersistenceDiagram::operator[](int k) const {
  static const std::vector<Point> none;
  if (k < 0 || k >= dims()) return none;
  return dims_[k];
}

std::size_t PersistenceDiagram::size() const noexcept {
  std::size_t n = 0;
  for (const auto& d : dims_) n += d.size();
  return n;
}

void PersistenceDiagram::add(int k, double birth, double death) {
  require(k >= 0, "negative homology dimension");
  require(birth <= death, "diagram point with death before birth");
  if (k >= dims()) dims_.resize(k + 1);
  dims_[k].emplace_back(birth, death);
}

void PersistenceDiagram::sort() {
  for (auto& d : dims_) std::sort(d.begin(), d.end());
}

PersistenceDiagram reduce_and_extract(const BoundaryMatrix& bm, const FilteredComplex& fc,
                                      const ReductionOptions& options) {
  require(bm.size() == fc.size(), "boundary matrix does not match the complex");
  // One (possibly empty) entry per dimension of the complex.
  std::vector<std::vector<PersistenceDiagram::Point>> dims(std::max(fc.max_dim() + 1, 1));
  for (const auto& p : persistence_pairs(bm, options.twist)) {
    const double birth = fc.value(p.birth);
    const double death = p.death < 0 ? infinite_death : fc.value(p.death);
    if (p.death >= 0 && birth == death && !options.include_zero_persistence) continue;
    if (p.dim >= static_cast<int>(dims.size())) dims.resize(p.dim + 1);
    dims[p.dim].emplace_back(birth, death);
  }
  return PersistenceDiagram(std::move(dims));
}

std::size_t betti_at(const PersistenceDiagram& dgm, double r, int k) {
  std::size_t n = 0;
  for (const auto& [b, d] : dgm[k]) {
    if (b <= r && r < d) ++n;
  }
  return n;
}

}  // namespace flood
