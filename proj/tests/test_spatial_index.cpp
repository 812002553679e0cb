#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>

#include "flood/spatial_index.hpp"
#include "support.hpp"

using namespace flood;
using flood::testing::uniform_cloud;

TEST_CASE("axis-sorted cloud ordering") {
  const PointCloud three(2, {2, 0, 0, 5, 1, -1});
  const auto sorted = build_axis_sorted(three, 0);
  CHECK(std::vector<Index>(sorted.order().begin(), sorted.order().end()) == std::vector<Index>{1, 2, 0});

  const PointCloud ascending(2, {0, 9, 1, 8, 2, 7, 3, 6});
  const auto id = build_axis_sorted(ascending, 0);
  CHECK(std::vector<Index>(id.order().begin(), id.order().end()) == std::vector<Index>{0, 1, 2, 3});

  const auto big = uniform_cloud(1000, 3, 4);
  for (int axis = 0; axis < 3; ++axis) {
    const auto s = build_axis_sorted(big, axis);
    CHECK(std::is_sorted(s.sorted_coords().begin(), s.sorted_coords().end()));
    auto perm = std::vector<Index>(s.order().begin(), s.order().end());
    std::sort(perm.begin(), perm.end());
    for (Index i = 0; i < 1000; ++i) CHECK(perm[i] == i);
  }
}

TEST_CASE("slab selection") {
  const PointCloud line(2, {0, 0, 1, 0, 2, 0, 3, 0});
  const auto s = build_axis_sorted(line, 0);
  const auto [a, b] = s.slab_indices(0.5, 2.5);
  std::vector<Index> got(s.order().begin() + a, s.order().begin() + b);
  CHECK(got == std::vector<Index>{1, 2});
  const auto [c, d] = s.slab_indices(-10, 10);
  CHECK(c == 0);
  CHECK(d == 4);
  const auto [e, f] = s.slab_indices(1.2, 1.8);
  CHECK(e == f);
  const auto [g, h] = s.slab_indices(1.0, 2.0);
  CHECK(h - g == 2);  // closed interval
}

TEST_CASE("slab selection agrees with a linear filter") {
  const auto cloud = uniform_cloud(10000, 3, 8);
  const auto s = build_axis_sorted(cloud, 1);
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    double lo = rng.uniform(), hi = rng.uniform();
    if (lo > hi) std::swap(lo, hi);
    const auto [a, b] = s.slab_indices(lo, hi);
    std::vector<Index> got(s.order().begin() + a, s.order().begin() + b);
    std::sort(got.begin(), got.end());
    std::vector<Index> want;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      const double v = cloud.coord(i, 1);
      if (v >= lo && v <= hi) want.push_back(static_cast<Index>(i));
    }
    CHECK(got == want);
  }
}

TEST_CASE("widest axis") {
  const PointCloud cloud(3, {0, 0, 0, 1, 5, 2, 0.5, 1, -1});
  CHECK(widest_axis(cloud) == 1);
}

TEST_CASE("k-d tree nearest neighbour") {
  SUBCASE("single point") {
    const PointCloud one(2, {3, 4});
    const KdTree tree(one);
    const auto nb = tree.nearest(std::vector<double>{0, 0});
    CHECK(nb.index == 0);
    CHECK(nb.distance == doctest::Approx(5.0));
  }
  SUBCASE("query on a data point") {
    const auto cloud = uniform_cloud(500, 2, 2);
    const KdTree tree(cloud);
    const auto nb = tree.nearest(cloud.point(123));
    CHECK(nb.index == 123);
    CHECK(nb.distance == 0.0);
  }
  SUBCASE("ties resolve to the smallest index") {
    const PointCloud cloud(2, {1, 0, -1, 0, 0, 1, 0, -1, 1, 0});
    const KdTree tree(cloud, 1);
    CHECK(tree.nearest(std::vector<double>{0, 0}).index == 0);
  }
  SUBCASE("matches a linear scan") {
    const auto cloud = uniform_cloud(10000, 3, 6);
    const KdTree tree(cloud);
    auto perm = std::vector<Index>(tree.permutation().begin(), tree.permutation().end());
    std::sort(perm.begin(), perm.end());
    for (Index i = 0; i < 10000; ++i) REQUIRE(perm[i] == i);
    const auto queries = uniform_cloud(1000, 3, 7, -0.2, 1.2);
    for (std::size_t q = 0; q < queries.size(); ++q) {
      Index best = -1;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double d2 = squared_distance(queries.point(q), cloud.point(i));
        if (d2 < best_d2) {
          best_d2 = d2;
          best = static_cast<Index>(i);
        }
      }
      const auto nb = tree.nearest(queries.point(q));
      CHECK(nb.index == best);
      CHECK(nb.distance == std::sqrt(best_d2));
      CHECK(tree.nearest_squared(queries.point(q)) == best_d2);
      CHECK(tree.nearest_squared(queries.point(q), 1.0) <= 1.0);
    }
  }
}
