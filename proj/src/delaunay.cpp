#include "flood/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "flood/error.hpp"
#include "flood/predicates.hpp"
#include "flood/rng.hpp"

namespace flood {

std::size_t Triangulation::simplex_count() const {
  std::size_t n = 0;
  for (const auto& s : simplices_by_dim) n += s.size();
  return n;
}

Index Triangulation::find(const Simplex& s) const {
  if (s.dim < 0 || s.dim >= static_cast<int>(simplices_by_dim.size())) return -1;
  const auto& list = simplices_by_dim[s.dim];
  const auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) return -1;
  return static_cast<Index>(it - list.begin());
}

Triangulation Triangulation::from_top_cells(int dim, std::vector<Simplex> cells) {
  require(dim == 2 || dim == 3, "triangulations are supported in dimensions 2 and 3");
  Triangulation tri;
  tri.dim = dim;
  tri.simplices_by_dim.resize(dim + 1);
  tri.facet_links.resize(dim + 1);
  for (const auto& c : cells) require(c.dim == dim, "top cell of the wrong dimension");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  const unsigned full = (1u << (dim + 1)) - 1;
  for (const auto& c : cells) {
    for (unsigned mask = 1; mask < full; ++mask) {
      const Simplex f = c.face(mask);
      tri.simplices_by_dim[f.dim].push_back(f);
    }
  }
  tri.simplices_by_dim[dim] = std::move(cells);
  for (int k = 0; k < dim; ++k) {
    auto& list = tri.simplices_by_dim[k];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  for (const auto& v : tri.simplices_by_dim[0]) tri.vertices.push_back(v.v[0]);

  for (int k = 1; k <= dim; ++k) {
    auto& links = tri.facet_links[k];
    links.reserve(tri.simplices_by_dim[k].size());
    const unsigned all = (1u << (k + 1)) - 1;
    for (const auto& s : tri.simplices_by_dim[k]) {
      std::array<Index, 4> l{-1, -1, -1, -1};
      for (int j = 0; j <= k; ++j) l[j] = tri.find(s.face(all & ~(1u << j)));
      links.push_back(l);
    }
  }
  return tri;
}

namespace {

constexpr int infinite = -1;

struct DegenerateConfiguration {};

struct Cell {
  std::array<int, 4> v{};
  std::array<int, 4> n{-1, -1, -1, -1};
  bool alive = true;
};

// Incremental Bowyer-Watson with a symbolic vertex at infinity: every hull
// facet is closed off by an infinite cell, whose conflict region is the open
// half-space beyond that facet.
class Builder {
 public:
  Builder(const std::vector<double>& coords, int dim) : coords_(coords), dim_(dim) {}

  std::vector<std::array<int, 4>> run(const std::vector<int>& order) {
    init(order);
    for (int id : order) {
      if (inserted_[id]) continue;
      insert(id);
    }
    std::vector<std::array<int, 4>> out;
    for (const auto& c : cells_) {
      if (!c.alive) continue;
      bool finite = true;
      for (int j = 0; j <= dim_; ++j) finite = finite && c.v[j] != infinite;
      if (finite) out.push_back(c.v);
    }
    return out;
  }

 private:
  std::span<const double> pt(int id) const { return {coords_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)}; }

  void gather(const std::array<int, 4>& ids, double* buf) const {
    for (int j = 0; j <= dim_; ++j) {
      for (int c = 0; c < dim_; ++c) buf[j * dim_ + c] = coords_[static_cast<std::size_t>(ids[j]) * dim_ + c];
    }
  }

  int orient_ids(const std::array<int, 4>& ids) const {
    double buf[12];
    gather(ids, buf);
    return predicates::orientation({buf, static_cast<std::size_t>((dim_ + 1) * dim_)}, dim_);
  }

  void init(const std::vector<int>& order) {
    inserted_.assign(coords_.size() / dim_, false);
    std::array<int, 4> base{};
    base[0] = order[0];
    std::size_t found = 1;
    // Affinely independent seed simplex; the caller has already verified one exists.
    for (std::size_t i = 1; i < order.size() && found <= static_cast<std::size_t>(dim_); ++i) {
      base[found] = order[i];
      if (independent(base, found)) ++found;
    }
    if (found <= static_cast<std::size_t>(dim_)) throw DegenerateConfiguration{};
    if (orient_ids(base) < 0) std::swap(base[0], base[1]);

    Cell c0;
    c0.v = base;
    cells_.push_back(c0);
    std::vector<int> fresh;
    for (int i = 0; i <= dim_; ++i) {
      Cell inf;
      inf.v = base;
      inf.v[i] = infinite;
      inf.n[i] = 0;
      cells_[0].n[i] = static_cast<int>(cells_.size());
      fresh.push_back(static_cast<int>(cells_.size()));
      cells_.push_back(inf);
    }
    link_among(fresh);
    for (int j = 0; j <= dim_; ++j) inserted_[base[j]] = true;
    last_ = 0;
  }

  // Whether ids[0..last] are affinely independent, given ids[0..last-1] are.
  bool independent(const std::array<int, 4>& ids, std::size_t last) const {
    if (last == 1) return true;  // points are deduplicated
    if (last == 2 && dim_ == 3) {
      // Three points in R^3: collinear iff every coordinate projection is.
      for (int drop = 0; drop < 3; ++drop) {
        double buf[6];
        for (int j = 0; j < 3; ++j) {
          int k = 0;
          for (int c = 0; c < 3; ++c) {
            if (c != drop) buf[j * 2 + k++] = pt(ids[j])[c];
          }
        }
        if (predicates::orientation({buf, 6}, 2) != 0) return true;
      }
      return false;
    }
    return orient_ids(ids) != 0;
  }

  // Opposite vertex of `cell` seen from its neighbour across facet `i`.
  int mirror_vertex(int cell, int i) const {
    const Cell& nb = cells_[cells_[cell].n[i]];
    for (int j = 0; j <= dim_; ++j) {
      if (nb.n[j] == cell) return nb.v[j];
    }
    throw Error(ErrorKind::integrity, "broken neighbour relation in Delaunay construction");
  }

  int infinite_slot(const Cell& c) const {
    for (int j = 0; j <= dim_; ++j) {
      if (c.v[j] == infinite) return j;
    }
    return -1;
  }

  bool in_conflict(int cell, int q) const {
    const Cell& c = cells_[cell];
    const int k = infinite_slot(c);
    if (k < 0) {
      double buf[12];
      gather(c.v, buf);
      const int s = predicates::in_circumsphere({buf, static_cast<std::size_t>((dim_ + 1) * dim_)}, pt(q), dim_);
      if (s == 0) throw DegenerateConfiguration{};
      return s > 0;
    }
    auto with_q = c.v;
    with_q[k] = q;
    auto with_w = c.v;
    with_w[k] = mirror_vertex(cell, k);
    const int oq = orient_ids(with_q);
    if (oq == 0) throw DegenerateConfiguration{};
    return oq != orient_ids(with_w);
  }

  int locate(int q) {
    int cell = last_;
    if (!cells_[cell].alive || infinite_slot(cells_[cell]) >= 0) cell = any_finite();
    const std::size_t cap = 4 * cells_.size() + 64;
    for (std::size_t steps = 0; steps < cap; ++steps) {
      const Cell& c = cells_[cell];
      if (infinite_slot(c) >= 0) return cell;
      const int o = orient_ids(c.v);
      const int offset = static_cast<int>(walk_rng_.below(dim_ + 1));
      int next = -1;
      for (int t = 0; t <= dim_ && next < 0; ++t) {
        const int i = (t + offset) % (dim_ + 1);
        auto ids = c.v;
        ids[i] = q;
        const int oi = orient_ids(ids);
        if (oi != 0 && oi != o) next = c.n[i];
      }
      if (next < 0) return cell;
      cell = next;
    }
    // Visibility walks terminate on Delaunay triangulations; fall back to a scan.
    for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
      if (cells_[i].alive && in_conflict(i, q)) return i;
    }
    throw Error(ErrorKind::integrity, "no conflicting cell found during Delaunay insertion");
  }

  int any_finite() const {
    for (int i = static_cast<int>(cells_.size()) - 1; i >= 0; --i) {
      if (cells_[i].alive && infinite_slot(cells_[i]) < 0) return i;
    }
    return 0;
  }

  void insert(int q) {
    const int start = locate(q);
    if (!in_conflict(start, q)) throw Error(ErrorKind::integrity, "located cell is not in conflict");

    std::vector<int> cavity{start};
    std::unordered_map<int, bool> state{{start, true}};
    for (std::size_t h = 0; h < cavity.size(); ++h) {
      const Cell& c = cells_[cavity[h]];
      for (int i = 0; i <= dim_; ++i) {
        const int nb = c.n[i];
        if (state.count(nb)) continue;
        const bool conflict = in_conflict(nb, q);
        state[nb] = conflict;
        if (conflict) cavity.push_back(nb);
      }
    }

    std::vector<int> fresh;
    for (int ci : cavity) {
      for (int i = 0; i <= dim_; ++i) {
        const int nb = cells_[ci].n[i];
        if (state[nb]) continue;
        Cell created;
        created.v = cells_[ci].v;
        created.v[i] = q;
        created.n[i] = nb;
        const int id = static_cast<int>(cells_.size());
        for (int j = 0; j <= dim_; ++j) {
          if (cells_[nb].n[j] == ci) cells_[nb].n[j] = id;
        }
        cells_.push_back(created);
        fresh.push_back(id);
      }
    }
    for (int ci : cavity) cells_[ci].alive = false;
    link_among(fresh);
    inserted_[q] = true;
    for (int id : fresh) {
      if (infinite_slot(cells_[id]) < 0) last_ = id;
    }
  }

  // Connects the given cells to one another across shared facets.
  void link_among(const std::vector<int>& ids) {
    struct Key {
      std::array<int, 3> f;
      bool operator==(const Key&) const = default;
    };
    struct KeyHash {
      std::size_t operator()(const Key& k) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (int x : k.f) h = (h ^ static_cast<std::size_t>(x + 2)) * 1099511628211ULL;
        return h;
      }
    };
    std::unordered_map<Key, std::pair<int, int>, KeyHash> open;
    for (int id : ids) {
      for (int i = 0; i <= dim_; ++i) {
        if (cells_[id].n[i] >= 0) continue;
        Key key{{-2, -2, -2}};
        int k = 0;
        for (int j = 0; j <= dim_; ++j) {
          if (j != i) key.f[k++] = cells_[id].v[j];
        }
        std::sort(key.f.begin(), key.f.begin() + k);
        const auto it = open.find(key);
        if (it == open.end()) {
          open.emplace(key, std::make_pair(id, i));
        } else {
          const auto [other, slot] = it->second;
          cells_[id].n[i] = other;
          cells_[other].n[slot] = id;
          open.erase(it);
        }
      }
    }
    if (!open.empty()) throw Error(ErrorKind::integrity, "unmatched facets while linking Delaunay cells");
  }

  const std::vector<double>& coords_;
  int dim_;
  std::vector<Cell> cells_;
  std::vector<bool> inserted_;
  int last_ = 0;
  Rng walk_rng_{0x3a1c};
};

bool affinely_dependent(const std::vector<double>& coords, int dim, std::size_t count) {
  // Greedy: keep a point iff it leaves the affine hull of those kept so far.
  std::vector<int> chosen{0};
  auto pt = [&](int id) { return std::span<const double>(coords.data() + static_cast<std::size_t>(id) * dim, dim); };
  for (std::size_t i = 1; i < count && static_cast<int>(chosen.size()) <= dim; ++i) {
    const int id = static_cast<int>(i);
    chosen.push_back(id);
    bool ok;
    if (chosen.size() == 2) {
      ok = true;
    } else if (static_cast<int>(chosen.size()) == dim + 1) {
      std::vector<double> buf;
      for (int c : chosen) buf.insert(buf.end(), pt(c).begin(), pt(c).end());
      ok = predicates::orientation(buf, dim) != 0;
    } else {
      ok = false;
      for (int drop = 0; drop < 3 && !ok; ++drop) {
        std::vector<double> buf;
        for (int c : chosen) {
          for (int a = 0; a < 3; ++a) {
            if (a != drop) buf.push_back(pt(c)[a]);
          }
        }
        ok = predicates::orientation(buf, 2) != 0;
      }
    }
    if (!ok) chosen.pop_back();
  }
  return static_cast<int>(chosen.size()) <= dim;
}

}  // namespace

Triangulation delaunay(const PointCloud& points, const DelaunayOptions& options) {
  const int dim = points.dim();
  require(dim == 2 || dim == 3, "Delaunay triangulation supports dimensions 2 and 3");

  // Deduplicate, keeping the smallest index of every coincident group.
  std::vector<Index> ids(points.size());
  std::iota(ids.begin(), ids.end(), Index{0});
  std::stable_sort(ids.begin(), ids.end(), [&](Index a, Index b) {
    const auto pa = points.point(a), pb = points.point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  std::vector<Index> unique_ids;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) {
      const auto pa = points.point(ids[i - 1]), pb = points.point(ids[i]);
      if (std::equal(pa.begin(), pa.end(), pb.begin())) continue;
    }
    unique_ids.push_back(ids[i]);
  }
  std::sort(unique_ids.begin(), unique_ids.end());
  const std::size_t duplicates = points.size() - unique_ids.size();

  require(unique_ids.size() >= static_cast<std::size_t>(dim + 1),
          "Delaunay triangulation needs at least dim + 1 distinct points");

  std::vector<double> coords;
  coords.reserve(unique_ids.size() * dim);
  for (Index id : unique_ids) {
    const auto p = points.point(id);
    coords.insert(coords.end(), p.begin(), p.end());
  }
  if (affinely_dependent(coords, dim, unique_ids.size())) {
    fail(ErrorKind::degeneracy, "all " + std::to_string(unique_ids.size()) +
                                    " points are affinely dependent; no full-dimensional triangulation exists");
  }

  double diag2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < unique_ids.size(); ++i) {
      lo = std::min(lo, coords[i * dim + a]);
      hi = std::max(hi, coords[i * dim + a]);
    }
    diag2 += (hi - lo) * (hi - lo);
  }
  const double scale = std::sqrt(diag2);

  std::vector<int> order(unique_ids.size());
  std::iota(order.begin(), order.end(), 0);
  Rng order_rng(mix_seed(options.seed));
  order_rng.shuffle(order.begin(), order.end());

  std::vector<std::array<int, 4>> cells;
  bool jittered = false;
  std::vector<double> work = coords;
  for (int attempt = 0;; ++attempt) {
    try {
      cells = Builder(work, dim).run(order);
      break;
    } catch (const DegenerateConfiguration&) {
      if (attempt >= options.max_jitter_attempts) {
        fail(ErrorKind::degeneracy, "degenerate configuration persists after symbolic jitter");
      }
      jittered = true;
      Rng jitter(mix_seed(options.seed ^ mix_seed(static_cast<std::uint64_t>(attempt) + 1)));
      const double amplitude = options.jitter_scale * scale * static_cast<double>(1 << attempt);
      for (std::size_t i = 0; i < coords.size(); ++i) work[i] = coords[i] + amplitude * jitter.uniform(-1.0, 1.0);
    }
  }

  std::vector<Simplex> top;
  top.reserve(cells.size());
  for (const auto& c : cells) {
    std::array<Index, 4> mapped{};
    for (int j = 0; j <= dim; ++j) mapped[j] = unique_ids[c[j]];
    top.push_back(Simplex::from_span({mapped.data(), static_cast<std::size_t>(dim + 1)}));
  }
  Triangulation tri = Triangulation::from_top_cells(dim, std::move(top));
  tri.jitter_applied = jittered;
  tri.duplicates_removed = duplicates;
  if (duplicates > 0) tri.warnings.push_back("removed " + std::to_string(duplicates) + " duplicate point(s)");
  if (jittered) tri.warnings.push_back("degenerate configuration resolved by symbolic jitter");
  return tri;
}

namespace {

// Circumcenter by solving 2 (p_i - p_0) . c' = |p_i - p_0|^2, c = p_0 + c'.
bool circumcenter(std::span<const double> pts, int dim, std::array<double, 3>& center) {
  double a[3][4] = {};
  for (int r = 0; r < dim; ++r) {
    double rhs = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double d = pts[(r + 1) * dim + c] - pts[c];
      a[r][c] = 2.0 * d;
      rhs += d * d;
    }
    a[r][dim] = rhs;
  }
  for (int col = 0; col < dim; ++col) {
    int piv = col;
    for (int r = col + 1; r < dim; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    }
    if (a[piv][col] == 0.0) return false;
    for (int c = 0; c <= dim; ++c) std::swap(a[col][c], a[piv][c]);
    for (int r = 0; r < dim; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= dim; ++c) a[r][c] -= f * a[col][c];
    }
  }
  for (int c = 0; c < dim; ++c) center[c] = pts[c] + a[c][dim] / a[c][c];
  return true;
}

}  // namespace

std::vector<CircumsphereViolation> circumsphere_check(const Triangulation& tri, const PointCloud& points,
                                                      double tolerance) {
  std::vector<CircumsphereViolation> out;
  const int dim = tri.dim;
  const auto& cells = tri.top_cells();
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    std::vector<double> pts;
    for (Index v : cells[ci].vertices()) {
      const auto p = points.point(v);
      pts.insert(pts.end(), p.begin(), p.end());
    }
    std::array<double, 3> center{};
    if (!circumcenter(pts, dim, center)) continue;
    const std::span<const double> cspan(center.data(), dim);
    const double radius = distance(points.point(cells[ci].v[0]), cspan);
    for (Index v : tri.vertices) {
      const double depth = radius - distance(points.point(v), cspan);
      if (depth > tolerance) out.push_back({static_cast<Index>(ci), v, depth});
    }
  }
  return out;
}

}  // namespace flood
