#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "flood/point_cloud.hpp"

namespace flood {

/// Coordinate with the largest extent; ties go to the lower axis.
int widest_axis(const PointCloud& cloud);

/// A cloud's points ordered by one coordinate.
///
/// Holds a pointer to the base cloud, which must outlive this object.
class AxisSortedCloud {
 public:
  AxisSortedCloud(const PointCloud& base, int axis);

  const PointCloud& base() const noexcept { return *base_; }
  int axis() const noexcept { return axis_; }
  std::size_t size() const noexcept { return order_.size(); }

  /// order()[r] is the index of the r-th point by the sort coordinate.
  std::span<const Index> order() const noexcept { return order_; }
  std::span<const double> sorted_coords() const noexcept { return sorted_coords_; }
  /// Full coordinates of the point at rank r, read from a rank-ordered copy.
  std::span<const double> sorted_point(std::size_t r) const noexcept {
    return {sorted_points_.data() + r * base_->dim(), static_cast<std::size_t>(base_->dim())};
  }

  /// Half-open rank range [first, second) of the points whose sort
  /// coordinate lies in the closed interval [lo, hi].
  std::pair<std::size_t, std::size_t> slab_indices(double lo, double hi) const;

 private:
  const PointCloud* base_;
  int axis_;
  std::vector<Index> order_;
  std::vector<double> sorted_coords_;
  std::vector<double> sorted_points_;
};

inline AxisSortedCloud build_axis_sorted(const PointCloud& cloud, int axis) { return {cloud, axis}; }

struct Neighbor {
  Index index = -1;
  double distance = 0.0;
};

/// Exact nearest-neighbour tree: median splits on the widest axis of each
/// node, buckets of at most `leaf_size` points.
///
/// Holds a pointer to the base cloud, which must outlive the tree.
class KdTree {
 public:
  static constexpr std::size_t default_leaf_size = 16;

  explicit KdTree(const PointCloud& cloud, std::size_t leaf_size = default_leaf_size);

  /// Nearest point to `query`; among equidistant points the smallest index.
  Neighbor nearest(std::span<const double> query) const;

  /// Squared distance to the nearest point. Early-outs once the running
  /// best drops to `stop_below_sq` or less, in which case the result is an
  /// upper bound no larger than `stop_below_sq`.
  double nearest_squared(std::span<const double> query, double stop_below_sq = -1.0) const;

  std::size_t size() const noexcept { return perm_.size(); }
  const PointCloud& base() const noexcept { return *base_; }

  /// Point indices in tree storage order (each exactly once).
  std::span<const Index> permutation() const noexcept { return perm_; }

 private:
  struct Node {
    // Leaves have axis == -1 and cover perm_[begin, end).
    int axis = -1;
    double split = 0.0;
    std::int32_t left = -1, right = -1;
    std::uint32_t begin = 0, end = 0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);

  const PointCloud* base_;
  std::size_t leaf_size_;
  int dim_;
  std::vector<Index> perm_;
  std::vector<double> coords_;  // perm-ordered copy for locality
  std::vector<Node> nodes_;
};

}  // namespace flood
