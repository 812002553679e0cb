#include "flood/flood.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "flood/error.hpp"
#include "flood/rng.hpp"

namespace flood {

void FloodConfig::validate() const {
  require(grid_resolution >= 1, "grid resolution must be >= 1");
  require(batch_size >= 1, "batch size must be >= 1");
  require(sampler != Sampler::uniform_random || random_count >= 1, "random sampler needs a positive count");
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Relative slack on the mask radius so that rounding never drops a point
// the exact ball would keep.
constexpr double mask_slack = 1.0 + 1e-12;

// Barycentric sample points of one top cell, ordered by support size.
struct SampleSet {
  int arity = 0;
  std::span<const double> weights;
  std::span<const std::uint8_t> supports;
  std::size_t size() const { return supports.size(); }
};

// Nearest-neighbour search over one cell's masked candidates, stored in
// presort-axis order so that a sweep outward from the query's axis
// coordinate can stop once the axis gap alone exceeds the best distance.
class LocalCandidates {
 public:
  void assign(const AxisSortedCloud& sorted, std::span<const std::size_t> ranks) {
    const auto& x = sorted.base();
    dim_ = x.dim();
    axis_ = sorted.axis();
    ax_.resize(ranks.size());
    pts_.resize(ranks.size() * dim_);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      ax_[i] = sorted.sorted_coords()[ranks[i]];
      const auto p = sorted.sorted_point(ranks[i]);
      for (int c = 0; c < dim_; ++c) pts_[i * dim_ + c] = p[c];
    }
    hint_ = 0;
  }

  double d2(const double* p, std::size_t i) const {
    double s = 0.0;
    for (int c = 0; c < dim_; ++c) {
      const double t = p[c] - pts_[i * dim_ + c];
      s += t * t;
    }
    return s;
  }

  // Squared nearest distance; returns early (with an upper bound no larger
  // than stop_below) once that threshold is reached.
  double nearest_squared(const double* p, double stop_below) {
    const std::size_t n = ax_.size();
    double best = d2(p, hint_);
    if (best <= stop_below) return best;
    const double q = p[axis_];
    std::size_t right = static_cast<std::size_t>(std::lower_bound(ax_.begin(), ax_.end(), q) - ax_.begin());
    std::size_t left = right;  // next to examine on the left is left - 1
    bool go_right = right < n, go_left = left > 0;
    while (go_right || go_left) {
      if (go_right) {
        const double g = ax_[right] - q;
        if (g * g >= best) {
          go_right = false;
        } else {
          const double d = d2(p, right);
          if (d < best) {
            best = d;
            hint_ = right;
            if (best <= stop_below) return best;
          }
          go_right = ++right < n;
        }
      }
      if (go_left) {
        const double g = q - ax_[left - 1];
        if (g * g >= best) {
          go_left = false;
        } else {
          const double d = d2(p, left - 1);
          if (d < best) {
            best = d;
            hint_ = left - 1;
            if (best <= stop_below) return best;
          }
          go_left = --left > 0;
        }
      }
    }
    return best;
  }

  bool empty() const { return ax_.empty(); }

 private:
  int dim_ = 0, axis_ = 0;
  std::vector<double> ax_, pts_;
  std::size_t hint_ = 0;
};

class TreeCandidates {
 public:
  explicit TreeCandidates(const KdTree& tree) : tree_(&tree) {}
  double nearest_squared(const double* p, double stop_below) {
    return tree_->nearest_squared({p, static_cast<std::size_t>(tree_->base().dim())}, stop_below);
  }

 private:
  const KdTree* tree_;
};

using FaceValues = std::array<double, 16>;

// Flood values of every face of one cell: for each face mask, the largest
// nearest-neighbour distance over the sample points supported on that face.
// A point may stop searching once it is provably no farther from X than an
// already evaluated point on its own support face: it then cannot raise the
// maximum of any face containing it.
template <class Nearest>
FaceValues evaluate_cell(const SampleSet& samples, std::span<const double> vertex_coords, int dim,
                         Nearest& nearest, bool strict, std::vector<double>& scratch) {
  const int k1 = samples.arity;
  const unsigned masks = 1u << k1;
  std::array<double, 16> lower{};
  std::array<double, 16> exact_support_max{};
  lower.fill(-1.0);
  exact_support_max.fill(-1.0);

  scratch.resize(static_cast<std::size_t>(dim));
  double* p = scratch.data();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double* w = samples.weights.data() + i * k1;
    for (int c = 0; c < dim; ++c) {
      double s = 0.0;
      for (int j = 0; j < k1; ++j) {
        if (w[j] != 0.0) s += w[j] * vertex_coords[j * dim + c];
      }
      p[c] = s;
    }
    const unsigned support = samples.supports[i];
    const double best = nearest.nearest_squared(p, strict ? -1.0 : lower[support]);
    exact_support_max[support] = std::max(exact_support_max[support], best);
    if (best > lower[support]) {
      for (unsigned t = support; t < masks; t = (t + 1) | support) lower[t] = std::max(lower[t], best);
    }
  }

  FaceValues out;
  out.fill(std::numeric_limits<double>::quiet_NaN());
  for (unsigned t = 1; t < masks; ++t) {
    double m = -1.0;
    for (unsigned s = t; s != 0; s = (s - 1) & t) m = std::max(m, exact_support_max[s]);
    out[t] = std::sqrt(m);
  }
  return out;
}

// Cached per-cell sample storage for the random sampler: every face draws
// its own points from a seed derived from its vertex ids, so a face's points
// coincide in all of its cofaces.
void random_samples(const Simplex& cell, const FloodConfig& config, std::vector<double>& weights,
                    std::vector<std::uint8_t>& supports) {
  const int k1 = cell.dim + 1;
  const unsigned masks = 1u << k1;
  std::vector<unsigned> order(masks - 1);
  std::iota(order.begin(), order.end(), 1u);
  std::stable_sort(order.begin(), order.end(),
                   [](unsigned a, unsigned b) { return std::popcount(a) < std::popcount(b); });
  weights.clear();
  supports.clear();
  for (unsigned t : order) {
    const int fk1 = std::popcount(t);
    if (fk1 == 1) {
      for (int j = 0; j < k1; ++j) weights.push_back(t == (1u << j) ? 1.0 : 0.0);
      supports.push_back(static_cast<std::uint8_t>(t));
      continue;
    }
    std::uint64_t seed = mix_seed(config.random_seed);
    for (int j = 0; j < k1; ++j) {
      if (t & (1u << j)) seed = mix_seed(seed ^ static_cast<std::uint64_t>(cell.v[j]));
    }
    Rng rng(seed);
    for (std::size_t r = 0; r < config.random_count; ++r) {
      const auto w = uniform_barycentric(rng, fk1);
      int f = 0;
      for (int j = 0; j < k1; ++j) weights.push_back((t & (1u << j)) ? w[f++] : 0.0);
      supports.push_back(static_cast<std::uint8_t>(t));
    }
  }
}

struct Ball {
  std::array<double, 3> center{};
  double radius = 0.0;
};

std::vector<double> cell_coords(const Simplex& cell, const PointCloud& landmarks) {
  std::vector<double> coords;
  coords.reserve(cell.size() * landmarks.dim());
  for (Index v : cell.vertices()) {
    const auto p = landmarks.point(v);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return coords;
}

Ball mask_ball(const Simplex& cell, const PointCloud& landmarks) {
  const auto coords = cell_coords(cell, landmarks);
  const auto ritter = ritter_enclosing_ball(coords, landmarks.dim());
  Ball b;
  std::copy(ritter.center.begin(), ritter.center.end(), b.center.begin());
  b.radius = mask_radius_factor * ritter.radius * mask_slack;
  return b;
}

// Uniform grid over X for ball queries. Entries hold presort ranks and a
// copy of the coordinates, bucketed by grid cell in ascending rank order.
class CellIndex {
 public:
  CellIndex(const AxisSortedCloud& sorted, double cell_size) : dim_(sorted.base().dim()) {
    const std::size_t n = sorted.size();
    for (int c = 0; c < dim_; ++c) {
      lo_[c] = inf;
      double hi = -inf;
      for (std::size_t r = 0; r < n; ++r) {
        lo_[c] = std::min(lo_[c], sorted.sorted_point(r)[c]);
        hi = std::max(hi, sorted.sorted_point(r)[c]);
      }
      extent_[c] = n ? hi - lo_[c] : 0.0;
    }
    // At most about one cell per point.
    const double budget = static_cast<double>(std::max<std::size_t>(n, 1));
    h_ = cell_size > 0 && std::isfinite(cell_size) ? cell_size : 1.0;
    while (true) {
      double cells = 1.0;
      for (int c = 0; c < dim_; ++c) cells *= std::floor(extent_[c] / h_) + 1;
      if (cells <= budget) break;
      h_ *= 1.5;
    }
    std::size_t total = 1;
    for (int c = 0; c < dim_; ++c) {
      count_[c] = static_cast<std::size_t>(std::floor(extent_[c] / h_)) + 1;
      total *= count_[c];
    }
    std::vector<std::size_t> id(n);
    start_.assign(total + 1, 0);
    for (std::size_t r = 0; r < n; ++r) {
      const auto p = sorted.sorted_point(r);
      std::size_t cell = 0;
      for (int c = dim_ - 1; c >= 0; --c) cell = cell * count_[c] + bin(p[c], c);
      id[r] = cell;
      ++start_[cell + 1];
    }
    std::partial_sum(start_.begin(), start_.end(), start_.begin());
    ranks_.resize(n);
    pts_.resize(n * dim_);
    auto fill = start_;
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t slot = fill[id[r]]++;
      ranks_[slot] = r;
      const auto p = sorted.sorted_point(r);
      std::copy(p.begin(), p.end(), pts_.begin() + slot * dim_);
    }
  }

  // Ranks in [rank_lo, rank_hi) within the closed ball, ascending. Hits are
  // collected in a bitmap over the ball's axis sub-slab, which yields them in
  // rank order without sorting.
  void query(const Ball& ball, const AxisSortedCloud& sorted, std::size_t rank_lo, std::size_t rank_hi,
             std::vector<std::size_t>& out) const {
    out.clear();
    std::array<std::size_t, 3> a{}, b{};
    for (int c = 0; c < dim_; ++c) {
      if (ball.center[c] + ball.radius < lo_[c] || ball.center[c] - ball.radius > lo_[c] + extent_[c]) return;
      a[c] = bin(ball.center[c] - ball.radius, c);
      b[c] = bin(ball.center[c] + ball.radius, c);
    }
    const int axis = sorted.axis();
    const auto coords = sorted.sorted_coords();
    const auto first = static_cast<std::size_t>(
        std::lower_bound(coords.begin() + rank_lo, coords.begin() + rank_hi, ball.center[axis] - ball.radius) -
        coords.begin());
    const auto last = static_cast<std::size_t>(
        std::upper_bound(coords.begin() + first, coords.begin() + rank_hi, ball.center[axis] + ball.radius) -
        coords.begin());
    if (first >= last) return;
    thread_local std::vector<std::uint64_t> bits;
    bits.assign((last - first + 63) / 64, 0);

    const double r2 = ball.radius * ball.radius;
    const std::size_t zs = dim_ == 3 ? a[2] : 0, ze = dim_ == 3 ? b[2] : 0;
    for (std::size_t z = zs; z <= ze; ++z) {
      for (std::size_t y = a[1]; y <= b[1]; ++y) {
        const std::size_t row = (z * count_[1] + y) * count_[0];
        for (std::size_t e = start_[row + a[0]]; e < start_[row + b[0] + 1]; ++e) {
          const double* p = pts_.data() + e * dim_;
          double d2 = 0.0;
          for (int c = 0; c < dim_; ++c) {
            const double t = p[c] - ball.center[c];
            d2 += t * t;
          }
          const std::size_t r = ranks_[e];
          if (d2 <= r2 && r >= first && r < last) bits[(r - first) >> 6] |= std::uint64_t{1} << ((r - first) & 63);
        }
      }
    }
    for (std::size_t w = 0; w < bits.size(); ++w) {
      for (std::uint64_t word = bits[w]; word != 0; word &= word - 1) {
        out.push_back(first + w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      }
    }
  }

 private:
  std::size_t bin(double v, int c) const {
    const double t = std::floor((v - lo_[c]) / h_);
    if (!(t > 0)) return 0;
    return std::min(static_cast<std::size_t>(t), count_[c] - 1);
  }

  int dim_;
  double h_ = 1.0;
  std::array<double, 3> lo_{}, extent_{};
  std::array<std::size_t, 3> count_{1, 1, 1};
  std::vector<std::size_t> start_, ranks_;
  std::vector<double> pts_;
};

// Grid cell size for a set of mask balls: half the median radius.
double index_cell_size(const std::vector<Ball>& balls) {
  if (balls.empty()) return 1.0;
  std::vector<double> r(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i) r[i] = balls[i].radius;
  std::nth_element(r.begin(), r.begin() + r.size() / 2, r.end());
  return r[r.size() / 2] / 2;
}

// Ranks (positions in the presort order) of each cell's candidates. The
// batch's common slab bounds the search; within it each cell keeps exactly
// the points of its own ball.
std::pair<std::size_t, std::size_t> mask_ranks(const std::vector<Ball>& balls, std::span<const Index> batch,
                                               const AxisSortedCloud& sorted, const CellIndex& index,
                                               std::vector<std::vector<std::size_t>>& out) {
  const int axis = sorted.axis();
  double lo = inf, hi = -inf;
  for (Index c : batch) {
    lo = std::min(lo, balls[c].center[axis] - balls[c].radius);
    hi = std::max(hi, balls[c].center[axis] + balls[c].radius);
  }
  const auto slab = sorted.slab_indices(lo, hi);
  out.resize(batch.size());
  for (std::size_t b = 0; b < batch.size(); ++b) index.query(balls[batch[b]], sorted, slab.first, slab.second, out[b]);
  return slab;
}

template <class Fn>
void parallel_tasks(std::size_t tasks, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t t = next++; t < tasks; t = next++) fn(id, t);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = tasks;
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

unsigned resolve_threads(unsigned threads) {
  return threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
}

}  // namespace

CandidateMask compute_mask(const Triangulation& tri, const PointCloud& landmarks, const AxisSortedCloud& sorted_x,
                           std::span<const Index> batch) {
  require(landmarks.dim() == sorted_x.base().dim(), "landmarks and X differ in dimension");
  std::vector<Ball> balls(tri.top_cells().size());
  for (Index c : batch) {
    require(c >= 0 && static_cast<std::size_t>(c) < balls.size(), "batch refers to a missing top cell");
    balls[c] = mask_ball(tri.top_cells()[c], landmarks);
  }
  std::vector<Ball> used;
  for (Index c : batch) used.push_back(balls[c]);
  const CellIndex index(sorted_x, index_cell_size(used));
  std::vector<std::vector<std::size_t>> ranks;
  CandidateMask mask;
  mask.slab = mask_ranks(balls, batch, sorted_x, index, ranks);
  mask.candidates.resize(batch.size());
  for (std::size_t b = 0; b < batch.size(); ++b) {
    for (auto r : ranks[b]) mask.candidates[b].push_back(sorted_x.order()[r]);
  }
  return mask;
}

double simplex_filtration(const PointCloud& grid_points, std::span<const Index> candidates, const PointCloud& x) {
  if (candidates.empty()) fail(ErrorKind::integrity, "empty candidate set: the mask contract was violated");
  double worst = 0.0;
  for (std::size_t i = 0; i < grid_points.size(); ++i) {
    double best = inf;
    for (Index c : candidates) best = std::min(best, squared_distance(grid_points.point(i), x.point(c)));
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

std::pair<double, double> flood_value_exact_gap(const PointCloud& simplex_vertices, int resolution,
                                                const PointCloud& x) {
  const int k = static_cast<int>(simplex_vertices.size()) - 1;
  require(k >= 0 && k <= 3, "simplex must have 1 to 4 vertices");
  const auto grid = barycentric_grid(BarycentricGridTemplate(k, resolution), simplex_vertices);
  const double value = directed_hausdorff(grid, x);
  return {value, value + grid_covering_bound(simplex_vertices, resolution)};
}

FloodComplex flood_complex(const PointCloud& x, const LandmarkSpec& spec, const FloodConfig& config,
                           StageTimings* timings) {
  config.validate();
  require(!x.empty(), "flood complex of an empty point cloud");
  Stopwatch clock;
  StageTimings local;

  FloodComplex result;
  switch (spec.mode) {
    case LandmarkSpec::Mode::fps:
      result.landmark_ids = farthest_point_sampling(x, spec.count, spec.fps_start);
      result.landmarks = x.select(result.landmark_ids);
      break;
    case LandmarkSpec::Mode::subset:
      require(!spec.indices.empty(), "empty landmark subset");
      result.landmark_ids = spec.indices;
      result.landmarks = x.select(result.landmark_ids);
      break;
    case LandmarkSpec::Mode::external:
      require(spec.points.dim() == x.dim(), "landmarks and X differ in dimension");
      result.landmarks = spec.points;
      break;
  }
  local[StageTimings::landmarks] = clock.lap();

  DelaunayOptions dopts;
  dopts.seed = config.delaunay_seed;
  result.triangulation = delaunay(result.landmarks, dopts);
  local[StageTimings::delaunay] = clock.lap();

  const auto& tri = result.triangulation;
  const auto& cells = tri.top_cells();
  const int dim = x.dim();
  const int k = tri.dim;
  const int k1 = k + 1;

  // The masking argument needs every landmark to be a point of X.
  Backend backend = config.backend;
  if (spec.mode == LandmarkSpec::Mode::external) backend = Backend::kdtree;
  result.backend_used = backend;

  const BarycentricGridTemplate tmpl(k, config.sampler == Sampler::grid ? config.grid_resolution : 1);
  for (const auto& cell : cells) {
    result.max_grid_bound = std::max(
        result.max_grid_bound, grid_covering_bound(cell_coords(cell, result.landmarks), dim, config.grid_resolution));
  }
  if (config.sampler != Sampler::grid) result.max_grid_bound = 0.0;

  const unsigned threads = resolve_threads(config.threads);
  std::vector<FaceValues> values(cells.size());
  std::vector<double> mask_seconds(threads, 0.0), filter_seconds(threads, 0.0);

  auto samples_for = [&](const Simplex& cell, std::vector<double>& w, std::vector<std::uint8_t>& s) {
    if (config.sampler == Sampler::grid) {
      SampleSet set;
      set.arity = k1;
      set.weights = {tmpl.weights(0).data(), tmpl.size() * k1};
      set.supports = tmpl.supports();
      return set;
    }
    random_samples(cell, config, w, s);
    SampleSet set;
    set.arity = k1;
    set.weights = w;
    set.supports = s;
    return set;
  };

  if (backend == Backend::masked_batch) {
    const int axis = config.sort_axis >= 0 ? config.sort_axis : widest_axis(x);
    require(axis < dim, "sort axis out of range");
    const AxisSortedCloud sorted(x, axis);
    std::vector<Ball> balls(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) balls[c] = mask_ball(cells[c], result.landmarks);
    std::vector<Index> by_center(cells.size());
    std::iota(by_center.begin(), by_center.end(), Index{0});
    std::stable_sort(by_center.begin(), by_center.end(),
                     [&](Index a, Index b) { return balls[a].center[axis] < balls[b].center[axis]; });
    const CellIndex index(sorted, index_cell_size(balls));
    local[StageTimings::masking] += clock.lap();

    const std::size_t batches = (cells.size() + config.batch_size - 1) / config.batch_size;
    parallel_tasks(batches, threads, [&](unsigned worker, std::size_t b) {
      thread_local std::vector<std::vector<std::size_t>> ranks;
      thread_local LocalCandidates local_x;
      thread_local std::vector<double> scratch, rw;
      thread_local std::vector<std::uint8_t> rs;
      const std::size_t first = b * config.batch_size;
      const std::size_t last = std::min(cells.size(), first + config.batch_size);
      const std::span<const Index> batch(by_center.data() + first, last - first);
      Stopwatch t;
      mask_ranks(balls, batch, sorted, index, ranks);
      mask_seconds[worker] += t.lap();
      std::vector<std::size_t> everything;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const Simplex& cell = cells[batch[i]];
        if (ranks[i].empty()) {
          // Only reachable when a landmark is not in X; scan the whole cloud.
          everything.resize(x.size());
          std::iota(everything.begin(), everything.end(), std::size_t{0});
          local_x.assign(sorted, everything);
        } else {
          local_x.assign(sorted, ranks[i]);
        }
        const auto coords = cell_coords(cell, result.landmarks);
        values[batch[i]] = evaluate_cell(samples_for(cell, rw, rs), coords, dim, local_x, config.strict, scratch);
      }
      filter_seconds[worker] += t.lap();
    });
  } else {
    const KdTree tree(x);
    local[StageTimings::other] += clock.lap();
    const std::size_t batches = (cells.size() + config.batch_size - 1) / config.batch_size;
    parallel_tasks(batches, threads, [&](unsigned worker, std::size_t b) {
      thread_local std::vector<double> scratch, rw;
      thread_local std::vector<std::uint8_t> rs;
      TreeCandidates nearest(tree);
      Stopwatch t;
      const std::size_t first = b * config.batch_size;
      const std::size_t last = std::min(cells.size(), first + config.batch_size);
      for (std::size_t c = first; c < last; ++c) {
        const auto coords = cell_coords(cells[c], result.landmarks);
        values[c] = evaluate_cell(samples_for(cells[c], rw, rs), coords, dim, nearest, config.strict, scratch);
      }
      filter_seconds[worker] += t.lap();
    });
  }
  {
    // Split the parallel phase's wall time in proportion to worker time.
    const double wall = clock.lap();
    const double m = std::accumulate(mask_seconds.begin(), mask_seconds.end(), 0.0);
    const double f = std::accumulate(filter_seconds.begin(), filter_seconds.end(), 0.0);
    const double share = (m + f) > 0 ? m / (m + f) : 0.0;
    local[StageTimings::masking] += wall * share;
    local[StageTimings::filtration] += wall * (1.0 - share);
  }

  // Every face takes its value from the first coface that reports it; the
  // others must agree bit for bit because P_face is a subset of P_coface.
  std::vector<std::vector<double>> by_dim(k1);
  for (int d = 0; d <= k; ++d) by_dim[d].assign(tri.simplices_by_dim[d].size(), std::numeric_limits<double>::quiet_NaN());
  const unsigned masks = 1u << k1;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (unsigned t = 1; t < masks; ++t) {
      const Simplex face = cells[c].face(t);
      const Index pos = tri.find(face);
      if (pos < 0) fail(ErrorKind::integrity, "face missing from triangulation");
      double& slot = by_dim[face.dim][pos];
      if (std::isnan(slot)) {
        slot = values[c][t];
      } else if (slot != values[c][t]) {
        fail(ErrorKind::integrity, "cofaces disagree on a shared face's flood value");
      }
    }
  }
  std::vector<Simplex> simplices;
  std::vector<double> vals;
  simplices.reserve(tri.simplex_count());
  vals.reserve(tri.simplex_count());
  for (int d = 0; d <= k; ++d) {
    for (std::size_t i = 0; i < by_dim[d].size(); ++i) {
      if (std::isnan(by_dim[d][i])) fail(ErrorKind::integrity, "simplex without a flood value");
      simplices.push_back(tri.simplices_by_dim[d][i]);
      vals.push_back(by_dim[d][i]);
    }
  }
  for (int d = 1; d <= k; ++d) {
    for (std::size_t i = 0; i < by_dim[d].size(); ++i) {
      for (int j = 0; j <= d; ++j) {
        if (by_dim[d - 1][tri.facet_links[d][i][j]] > by_dim[d][i]) {
          fail(ErrorKind::integrity, "flood values are not monotone under faces");
        }
      }
    }
  }
  result.complex = FilteredComplex(std::move(simplices), std::move(vals));
  local[StageTimings::other] += clock.lap();

  if (timings) {
    for (std::size_t s = 0; s < local.seconds.size(); ++s) timings->seconds[s] += local.seconds[s];
  }
  return result;
}

}  // namespace flood
