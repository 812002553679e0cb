#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace flood {

using Index = std::int32_t;

/// Dense row-major cloud of `dim`-dimensional points, dim in {2, 3}.
///
/// Every coordinate is finite; construction validates this.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(int dim, std::vector<double> coords);

  /// Builds a cloud from explicit rows. Throws on ragged rows.
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  double coord(std::size_t i, int axis) const noexcept { return coords_[i * dim_ + axis]; }

  std::span<const double> coords() const noexcept { return coords_; }

  /// Subset in the order given by `indices`.
  PointCloud select(std::span<const Index> indices) const;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

inline double distance(std::span<const double> a, std::span<const double> b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

}  // namespace flood
