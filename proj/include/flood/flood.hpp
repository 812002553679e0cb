#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flood/delaunay.hpp"
#include "flood/filtered_complex.hpp"
#include "flood/geometry.hpp"
#include "flood/point_cloud.hpp"
#include "flood/spatial_index.hpp"
#include "flood/timing.hpp"

namespace flood {

enum class Backend { masked_batch, kdtree };
enum class Sampler { grid, uniform_random };

struct FloodConfig {
  int grid_resolution = 20;
  std::size_t batch_size = 256;
  Sampler sampler = Sampler::grid;
  /// Uniform-random sampler: points drawn per face of dimension >= 1.
  std::size_t random_count = 64;
  std::uint64_t random_seed = 0;
  Backend backend = Backend::masked_batch;
  /// Disables the per-point early exit. Results are identical either way;
  /// strict mode computes every nearest-neighbour distance exactly.
  bool strict = false;
  /// Worker threads; 0 = hardware concurrency.
  unsigned threads = 0;
  /// Presort axis for masking; -1 = widest coordinate of X.
  int sort_axis = -1;
  std::uint64_t delaunay_seed = 0x5eed;

  void validate() const;
};

/// Where the landmarks come from.
struct LandmarkSpec {
  enum class Mode { fps, subset, external };
  Mode mode = Mode::fps;
  std::size_t count = 0;
  Index fps_start = 0;
  std::vector<Index> indices;
  PointCloud points;

  static LandmarkSpec fps(std::size_t count, Index start = 0) { return {Mode::fps, count, start, {}, {}}; }
  static LandmarkSpec subset(std::vector<Index> indices) { return {Mode::subset, 0, 0, std::move(indices), {}}; }
  static LandmarkSpec external(PointCloud points) { return {Mode::external, 0, 0, {}, std::move(points)}; }
};

/// Per top cell: indices into X that survive the enclosing-ball filter,
/// listed in presort-axis order.
struct CandidateMask {
  std::vector<std::vector<Index>> candidates;
  /// Rank range [first, second) of the batch's common slab in the presort order.
  std::pair<std::size_t, std::size_t> slab{0, 0};
};

/// Multiplier applied to the enclosing-ball radius when masking.
inline constexpr double mask_radius_factor = 1.4142135623730951;

/// Masks a batch of top cells (positions in tri.top_cells()). Every x with
/// |x - c| <= sqrt(2) r is kept, (c, r) being the cell's Ritter ball; all
/// candidates come from the batch's common slab along the presort axis.
CandidateMask compute_mask(const Triangulation& tri, const PointCloud& landmarks, const AxisSortedCloud& sorted_x,
                           std::span<const Index> batch);

/// max over grid points of min over candidates of the distance. Throws
/// ErrorKind::integrity if `candidates` is empty.
double simplex_filtration(const PointCloud& grid_points, std::span<const Index> candidates, const PointCloud& x);

/// Discrete flood value of a simplex and the covering-bound bracket
/// [value, value + bound] around its exact continuous value.
std::pair<double, double> flood_value_exact_gap(const PointCloud& simplex_vertices, int resolution,
                                                const PointCloud& x);

struct FloodComplex {
  FilteredComplex complex;         ///< vertex ids index `landmarks`
  PointCloud landmarks;
  std::vector<Index> landmark_ids;  ///< landmark -> index into X (empty when external)
  Triangulation triangulation;
  Backend backend_used = Backend::masked_batch;
  /// max over top cells of grid_covering_bound (0 for the random sampler).
  double max_grid_bound = 0.0;
};

/// Landmarks, Delaunay triangulation, and flood values of every simplex.
/// Stage durations are added to `timings` when given.
FloodComplex flood_complex(const PointCloud& x, const LandmarkSpec& landmarks, const FloodConfig& config = {},
                           StageTimings* timings = nullptr);

inline FilteredComplex build_flood_filtration(const PointCloud& x, const LandmarkSpec& landmarks,
                                              const FloodConfig& config = {}) {
  return flood_complex(x, landmarks, config).complex;
}

}  // namespace flood
