#include "flood/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "flood/error.hpp"
#include "flood/spatial_index.hpp"

namespace flood {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

using Point = PersistenceDiagram::Point;

double linf(const Point& p, const Point& q) {
  const double db = std::abs(p.first - q.first);
  const double dd = std::isinf(p.second) && std::isinf(q.second) ? 0.0 : std::abs(p.second - q.second);
  return std::max(db, dd);
}

double to_diagonal(const Point& p) { return (p.second - p.first) / 2; }

// Hopcroft-Karp on a bipartite graph given as adjacency lists of the left side.
class Matcher {
 public:
  explicit Matcher(const std::vector<std::vector<int>>& adj, int right)
      : adj_(adj), left_match_(adj.size(), -1), right_match_(right, -1), layer_(adj.size()) {}

  int solve() {
    int size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (left_match_[u] < 0 && dfs(static_cast<int>(u))) ++size;
      }
    }
    return size;
  }

 private:
  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (left_match_[u] < 0) {
        layer_[u] = 0;
        q.push(static_cast<int>(u));
      } else {
        layer_[u] = -1;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        const int w = right_match_[v];
        if (w < 0) {
          found = true;
        } else if (layer_[w] < 0) {
          layer_[w] = layer_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[u]) {
      const int w = right_match_[v];
      if (w < 0 || (layer_[w] == layer_[u] + 1 && dfs(w))) {
        left_match_[u] = v;
        right_match_[v] = u;
        return true;
      }
    }
    layer_[u] = -1;
    return false;
  }

  const std::vector<std::vector<int>>& adj_;
  std::vector<int> left_match_, right_match_, layer_;
};

// Left: a (n) then diagonal copies of b (m). Right: b (m) then diagonal
// copies of a (n).
bool perfect_at(const std::vector<Point>& a, const std::vector<Point>& b, double t) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  std::vector<std::vector<int>> adj(n + m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      if (linf(a[i], b[j]) <= t) adj[i].push_back(j);
    }
    if (to_diagonal(a[i]) <= t) adj[i].push_back(m + i);
  }
  for (int j = 0; j < m; ++j) {
    if (to_diagonal(b[j]) <= t) adj[n + j].push_back(j);
    for (int i = 0; i < n; ++i) adj[n + j].push_back(m + i);
  }
  return Matcher(adj, n + m).solve() == n + m;
}

}  // namespace

double bottleneck_distance(std::span<const Point> a, std::span<const Point> b) {
  std::vector<Point> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& p : a) (std::isinf(p.second) ? ea.push_back(p.first) : fa.push_back(p));
  for (const auto& p : b) (std::isinf(p.second) ? eb.push_back(p.first) : fb.push_back(p));
  if (ea.size() != eb.size()) return inf;

  // Points at infinity differ only in birth; sorted order is an optimal
  // bottleneck matching on the line.
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));

  std::vector<double> costs{0.0};
  for (const auto& p : fa) {
    costs.push_back(to_diagonal(p));
    for (const auto& q : fb) costs.push_back(linf(p, q));
  }
  for (const auto& q : fb) costs.push_back(to_diagonal(q));
  std::sort(costs.begin(), costs.end());
  costs.erase(std::unique(costs.begin(), costs.end()), costs.end());

  // Smallest candidate cost admitting a perfect matching; the largest one
  // always does (every point can reach the diagonal).
  std::size_t lo = 0, hi = costs.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (perfect_at(fa, fb, costs[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::max(essential, costs[lo]);
}

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  require(!a.empty() && !b.empty(), "Hausdorff distance of an empty point set");
  require(a.dim() == b.dim(), "Hausdorff distance between clouds of different dimension");
  auto directed = [](const PointCloud& from, const PointCloud& to) {
    const KdTree tree(to);
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) worst = std::max(worst, tree.nearest(from.point(i)).distance);
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace flood
