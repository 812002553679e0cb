#include "flood/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "flood/error.hpp"

namespace flood {

int widest_axis(const PointCloud& cloud) {
  require(!cloud.empty(), "widest_axis of an empty cloud");
  int best = 0;
  double best_extent = -1.0;
  for (int a = 0; a < cloud.dim(); ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      lo = std::min(lo, cloud.coord(i, a));
      hi = std::max(hi, cloud.coord(i, a));
    }
    if (hi - lo > best_extent) {
      best_extent = hi - lo;
      best = a;
    }
  }
  return best;
}

AxisSortedCloud::AxisSortedCloud(const PointCloud& base, int axis) : base_(&base), axis_(axis) {
  require(axis >= 0 && axis < base.dim(), "sort axis out of range");
  order_.resize(base.size());
  std::iota(order_.begin(), order_.end(), Index{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](Index a, Index b) { return base.coord(a, axis) < base.coord(b, axis); });
  sorted_coords_.resize(order_.size());
  sorted_points_.resize(order_.size() * base.dim());
  for (std::size_t r = 0; r < order_.size(); ++r) {
    sorted_coords_[r] = base.coord(order_[r], axis);
    const auto p = base.point(order_[r]);
    std::copy(p.begin(), p.end(), sorted_points_.begin() + r * base.dim());
  }
}

std::pair<std::size_t, std::size_t> AxisSortedCloud::slab_indices(double lo, double hi) const {
  require(lo <= hi, "slab bounds must satisfy lo <= hi");
  const auto first = std::lower_bound(sorted_coords_.begin(), sorted_coords_.end(), lo);
  const auto last = std::upper_bound(first, sorted_coords_.end(), hi);
  return {static_cast<std::size_t>(first - sorted_coords_.begin()),
          static_cast<std::size_t>(last - sorted_coords_.begin())};
}

KdTree::KdTree(const PointCloud& cloud, std::size_t leaf_size)
    : base_(&cloud), leaf_size_(std::max<std::size_t>(leaf_size, 1)), dim_(cloud.dim()) {
  require(!cloud.empty(), "k-d tree over an empty cloud");
  perm_.resize(cloud.size());
  std::iota(perm_.begin(), perm_.end(), Index{0});
  nodes_.reserve(2 * cloud.size() / leaf_size_ + 2);
  build(0, static_cast<std::uint32_t>(perm_.size()));
  coords_.resize(perm_.size() * dim_);
  for (std::size_t r = 0; r < perm_.size(); ++r) {
    const auto p = cloud.point(perm_[r]);
    std::copy(p.begin(), p.end(), coords_.begin() + r * dim_);
  }
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{});
  nodes_[id].begin = begin;
  nodes_[id].end = end;
  if (end - begin <= leaf_size_) return id;

  int axis = 0;
  double best_extent = -1.0;
  for (int a = 0; a < dim_; ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto r = begin; r < end; ++r) {
      const double v = base_->coord(perm_[r], a);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_extent) {
      best_extent = hi - lo;
      axis = a;
    }
  }
  if (best_extent <= 0.0) return id;  // all points coincide; keep as one leaf

  const auto mid = begin + (end - begin) / 2;
  std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end, [&](Index a, Index b) {
    const double va = base_->coord(a, axis), vb = base_->coord(b, axis);
    return va < vb || (va == vb && a < b);
  });
  const double split = base_->coord(perm_[mid], axis);
  const auto left = build(begin, mid);
  const auto right = build(mid, end);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

namespace {

struct Search {
  std::span<const double> query;
  double best_d2 = std::numeric_limits<double>::infinity();
  Index best_index = std::numeric_limits<Index>::max();
  double stop_below = -1.0;
  bool stopped = false;
};

}  // namespace

Neighbor KdTree::nearest(std::span<const double> query) const {
  Search s{query};
  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      for (auto r = node.begin; r < node.end; ++r) {
        double d2 = 0.0;
        for (int c = 0; c < dim_; ++c) {
          const double t = query[c] - coords_[r * dim_ + c];
          d2 += t * t;
        }
        if (d2 < s.best_d2 || (d2 == s.best_d2 && perm_[r] < s.best_index)) {
          s.best_d2 = d2;
          s.best_index = perm_[r];
        }
      }
      return;
    }
    const double diff = query[node.axis] - node.split;
    const auto near = diff < 0.0 ? node.left : node.right;
    const auto far = diff < 0.0 ? node.right : node.left;
    self(self, near);
    if (diff * diff <= s.best_d2) self(self, far);
  };
  visit(visit, 0);
  return {s.best_index, std::sqrt(s.best_d2)};
}

double KdTree::nearest_squared(std::span<const double> query, double stop_below_sq) const {
  Search s{query};
  s.stop_below = stop_below_sq;
  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& node = nodes_[id];
    if (node.axis < 0) {
      for (auto r = node.begin; r < node.end; ++r) {
        double d2 = 0.0;
        for (int c = 0; c < dim_; ++c) {
          const double t = query[c] - coords_[r * dim_ + c];
          d2 += t * t;
        }
        if (d2 < s.best_d2) {
          s.best_d2 = d2;
          if (d2 <= s.stop_below) {
            s.stopped = true;
            return;
          }
        }
      }
      return;
    }
    const double diff = query[node.axis] - node.split;
    const auto near = diff < 0.0 ? node.left : node.right;
    const auto far = diff < 0.0 ? node.right : node.left;
    self(self, near);
    if (!s.stopped && diff * diff < s.best_d2) self(self, far);
  };
  visit(visit, 0);
  return s.best_d2;
}

}  // namespace flood
