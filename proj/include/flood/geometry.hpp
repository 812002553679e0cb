#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flood/point_cloud.hpp"
#include "flood/rng.hpp"

namespace flood {

/// Greedy farthest point sampling.
///
/// Returns `k` distinct indices, the first being `start`; every later
/// index maximizes the distance to the already chosen prefix, with the
/// smallest index winning ties. If `insertion_distances` is given it
/// receives, per pick, the distance to the prefix at selection time
/// (infinity for the first pick). O(n k).
std::vector<Index> farthest_point_sampling(const PointCloud& cloud, std::size_t k, Index start,
                                           std::vector<double>* insertion_distances = nullptr);

struct EnclosingBall {
  std::vector<double> center;
  double radius = 0.0;

  bool contains(std::span<const double> p, double tolerance = 1e-9) const;
};

/// Ritter-style ball: centered at the midpoint of the longest edge (ties go
/// to the lexicographically smallest vertex pair), radius reaching the
/// farthest vertex. Needs at least two vertices.
EnclosingBall ritter_enclosing_ball(const PointCloud& simplex_vertices);

/// Same rule on raw rows of `dim` coordinates; used by the flooding loop.
EnclosingBall ritter_enclosing_ball(std::span<const double> vertex_coords, int dim);

/// Points of a k-simplex with barycentric coordinates in (1/m) Z, shared by
/// every simplex of dimension k.
///
/// Points are ordered by support size first, so a face's points form a
/// subset that can be read off without recomputation.
class BarycentricGridTemplate {
 public:
  BarycentricGridTemplate(int simplex_dim, int resolution);

  int simplex_dim() const noexcept { return simplex_dim_; }
  int resolution() const noexcept { return resolution_; }
  int arity() const noexcept { return simplex_dim_ + 1; }
  std::size_t size() const noexcept { return support_.size(); }

  /// Barycentric weights of point i, `arity()` entries summing to 1.
  std::span<const double> weights(std::size_t i) const noexcept {
    return {weights_.data() + i * arity(), static_cast<std::size_t>(arity())};
  }
  /// Integer numerators of point i (weights times m).
  std::span<const std::uint16_t> numerators(std::size_t i) const noexcept {
    return {numerators_.data() + i * arity(), static_cast<std::size_t>(arity())};
  }
  /// Bitmask of the vertices carrying nonzero weight.
  std::uint8_t support(std::size_t i) const noexcept { return support_[i]; }
  std::span<const std::uint8_t> supports() const noexcept { return support_; }

  /// Indices of the points lying on the face spanned by the vertices in
  /// `face_mask` (nonzero mask over arity() bits).
  std::span<const Index> face_indices(std::uint8_t face_mask) const noexcept {
    return face_index_map_[face_mask];
  }

 private:
  int simplex_dim_;
  int resolution_;
  std::vector<std::uint16_t> numerators_;
  std::vector<double> weights_;
  std::vector<std::uint8_t> support_;
  std::vector<std::vector<Index>> face_index_map_;
};

/// Number of grid points, C(m + k, k).
std::size_t grid_point_count(int simplex_dim, int resolution);

/// Realizes the template on concrete vertices; output[i] = sum_j w_ij v_j.
PointCloud barycentric_grid(const BarycentricGridTemplate& tmpl, const PointCloud& simplex_vertices);

/// Writes the realized points into `out` (size() * dim doubles). The
/// summation order is fixed so that a face's points come out bit-identical
/// from every coface.
void barycentric_grid_into(const BarycentricGridTemplate& tmpl, std::span<const double> vertex_coords,
                           int dim, std::span<double> out);

/// (1/m) * sqrt(sum_{i<j} |v_i - v_j|^2), an upper bound on the Hausdorff
/// distance between the grid and the hull of the simplex.
double grid_covering_bound(const PointCloud& simplex_vertices, int resolution);
double grid_covering_bound(std::span<const double> vertex_coords, int dim, int resolution);

/// Sample size for independent uniform points on a k-simplex so that,
/// with probability at least 1 - delta, every hull point lies within
/// eps * diam of a sample: (4/eps)^k (k ln(4/eps) + ln(1/delta)).
std::size_t random_covering_count(int simplex_dim, double eps, double delta);

/// Uniform barycentric weights on the standard simplex (normalized
/// exponentials), `arity` entries.
std::vector<double> uniform_barycentric(Rng& rng, int arity);

/// max_{a in A} min_{b in B} |a - b| by exhaustive scan.
double directed_hausdorff(const PointCloud& a, const PointCloud& b);

}  // namespace flood
