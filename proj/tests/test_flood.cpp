#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flood/error.hpp"
#include "flood/flood.hpp"
#include "flood/persistence.hpp"
#include "support.hpp"

using namespace flood;

namespace {

// max over grid points of min over all of X, no masking and no early exit.
double naive_value(const Simplex& s, const PointCloud& landmarks, int m, const PointCloud& x) {
  std::vector<Index> ids(s.vertices().begin(), s.vertices().end());
  const auto grid = barycentric_grid(BarycentricGridTemplate(s.dim, m), landmarks.select(ids));
  double worst = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double best = INFINITY;
    for (std::size_t i = 0; i < x.size(); ++i) best = std::min(best, distance(grid.point(g), x.point(i)));
    worst = std::max(worst, best);
  }
  return worst;
}

void check_against_naive(const FloodComplex& fc, const PointCloud& x, int m) {
  const auto& c = fc.complex;
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(std::abs(c.value(i) - naive_value(c.simplex(i), fc.landmarks, m, x)) <= 1e-12);
  }
}

bool same_values(const FilteredComplex& a, const FilteredComplex& b) {
  return a.simplices() == b.simplices() && a.values() == b.values();
}

FloodConfig config_with(int m) {
  FloodConfig c;
  c.grid_resolution = m;
  return c;
}

}  // namespace

TEST_CASE("mask of a cell whose data are its own vertices") {
  const PointCloud tri_pts = PointCloud::from_rows({{0, 0}, {1, 0}, {0.3, 0.8}});
  const auto tri = Triangulation::from_top_cells(2, {Simplex{0, 1, 2}});
  const AxisSortedCloud sorted(tri_pts, 0);
  const std::vector<Index> batch{0};
  auto mask = compute_mask(tri, tri_pts, sorted, batch);
  REQUIRE(mask.candidates.size() == 1);
  std::sort(mask.candidates[0].begin(), mask.candidates[0].end());
  CHECK(mask.candidates[0] == std::vector<Index>{0, 1, 2});
}

TEST_CASE("mask equals the linear ball filter") {
  const auto x = testing::uniform_cloud(1000, 2, 5);
  const PointCloud tri_pts = PointCloud::from_rows({{0.4, 0.4}, {0.55, 0.42}, {0.47, 0.6}});
  const auto tri = Triangulation::from_top_cells(2, {Simplex{0, 1, 2}});
  const auto ball = ritter_enclosing_ball(tri_pts);
  for (int axis = 0; axis < 2; ++axis) {
    const AxisSortedCloud sorted(x, axis);
    const std::vector<Index> batch{0};
    auto mask = compute_mask(tri, tri_pts, sorted, batch);
    auto got = mask.candidates[0];
    std::sort(got.begin(), got.end());
    std::vector<Index> expected;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (distance(x.point(i), ball.center) <= mask_radius_factor * ball.radius) expected.push_back(static_cast<Index>(i));
    }
    CHECK(got == expected);
    for (Index i : got) {
      const double c = x.coord(i, axis);
      CHECK(c >= sorted.sorted_coords()[mask.slab.first]);
      CHECK(c <= sorted.sorted_coords()[mask.slab.second - 1]);
    }
  }
}

TEST_CASE("mask boundary is closed") {
  // c = (1, 0), r = 1; the point (1, sqrt2) sits on the masking sphere.
  const PointCloud tri_pts = PointCloud::from_rows({{0, 0}, {2, 0}, {1, 0.5}});
  const PointCloud x = PointCloud::from_rows({{0, 0}, {2, 0}, {1, 0.5}, {1, std::numbers::sqrt2}, {1, 1.5}});
  const auto tri = Triangulation::from_top_cells(2, {Simplex{0, 1, 2}});
  const AxisSortedCloud sorted(x, 1);
  const std::vector<Index> batch{0};
  auto got = compute_mask(tri, tri_pts, sorted, batch).candidates[0];
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<Index>{0, 1, 2, 3});
}

TEST_CASE("simplex filtration examples") {
  const PointCloud x = PointCloud::from_rows({{0, 0}, {3, 0}, {10, 10}});
  const auto grid = barycentric_grid(BarycentricGridTemplate(1, 20), x.select(std::vector<Index>{0, 1}));
  const std::vector<Index> all{0, 1, 2};
  CHECK(simplex_filtration(grid, all, x) == doctest::Approx(1.5));
  CHECK_THROWS_AS(simplex_filtration(grid, std::vector<Index>{}, x), Error);

  const auto cloud = testing::uniform_cloud(50, 2, 8);
  const PointCloud corners = PointCloud::from_rows({{0.1, 0.2}, {0.9, 0.3}, {0.4, 0.85}});
  const auto g = barycentric_grid(BarycentricGridTemplate(2, 12), corners);
  std::vector<Index> ids(cloud.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<Index>(i);
  double naive = 0.0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    double best = INFINITY;
    for (std::size_t i = 0; i < cloud.size(); ++i) best = std::min(best, distance(g.point(p), cloud.point(i)));
    naive = std::max(naive, best);
  }
  CHECK(simplex_filtration(g, ids, cloud) == doctest::Approx(naive).epsilon(1e-14));
}

TEST_CASE("unit circle edge values are arc sagittas") {
  const auto x = testing::circle_cloud(4096);
  const auto fc = flood_complex(x, LandmarkSpec::fps(12), config_with(64));
  for (std::size_t i = 0; i < fc.complex.size(); ++i) {
    if (fc.complex.dim(i) == 0) CHECK(fc.complex.value(i) == 0.0);
  }
  // Boundary edges join landmarks adjacent in angle.
  std::vector<Index> by_angle(fc.landmark_ids.size());
  for (std::size_t i = 0; i < by_angle.size(); ++i) by_angle[i] = static_cast<Index>(i);
  std::sort(by_angle.begin(), by_angle.end(),
            [&](Index a, Index b) { return fc.landmark_ids[a] < fc.landmark_ids[b]; });
  int short_arcs = 0;
  int long_arcs = 0;
  const double s = 1 - std::cos(std::numbers::pi / 16);
  const double l = 1 - std::cos(std::numbers::pi / 8);
  for (std::size_t i = 0; i < by_angle.size(); ++i) {
    const Simplex e{by_angle[i], by_angle[(i + 1) % by_angle.size()]};
    const double v = fc.complex.value(fc.complex.position(e));
    if (std::abs(v - s) < 1e-9) ++short_arcs;
    if (std::abs(v - l) < 1e-9) ++long_arcs;
  }
  CHECK(short_arcs == 8);
  CHECK(long_arcs == 4);
}

TEST_CASE("three points: closed-form edge values and triangle value") {
  const PointCloud x = PointCloud::from_rows({{0, 0}, {4, 0}, {1, 3}});
  const int m = 256;
  const auto fc = flood_complex(x, LandmarkSpec::subset({0, 1, 2}), config_with(m));
  const double a = std::sqrt(10.0);
  const double b = 4.0;
  const auto dgm = persistence_diagram(fc.complex);
  REQUIRE(dgm[0].size() == 3);
  CHECK(dgm[0][0].second == doctest::Approx(a / 2).epsilon(1e-14));
  CHECK(dgm[0][1].second == doctest::Approx(b / 2).epsilon(1e-14));
  CHECK(std::isinf(dgm[0][2].second));
  // The circumcenter (2, 1) lies inside this acute triangle, so the exact value
  // is the circumradius; the grid value sits within one covering bound below it.
  const double circumradius = std::sqrt(5.0);
  const double tri_value = fc.complex.values().back();
  CHECK(tri_value <= circumradius + 1e-12);
  CHECK(tri_value >= circumradius - grid_covering_bound(x, m));
  check_against_naive(fc, x, m);
}

TEST_CASE("masked backend matches the unmasked naive values") {
  for (int dim : {2, 3}) {
    const auto x = testing::uniform_cloud(1500, dim, 100 + dim);
    const int m = dim == 2 ? 7 : 4;
    const auto fc = flood_complex(x, LandmarkSpec::fps(40), config_with(m));
    CHECK(fc.backend_used == Backend::masked_batch);
    fc.complex.validate();
    check_against_naive(fc, x, m);
  }
}

TEST_CASE("results are independent of backend, batch size, threads and strictness") {
  for (int dim : {2, 3}) {
    const auto x = testing::uniform_cloud(4000, dim, 200 + dim);
    FloodConfig base = config_with(dim == 2 ? 10 : 6);
    const auto ref = flood_complex(x, LandmarkSpec::fps(80), base).complex;
    for (std::size_t batch : {1, 17, 256}) {
      for (unsigned threads : {1u, 3u}) {
        for (bool strict : {false, true}) {
          FloodConfig c = base;
          c.batch_size = batch;
          c.threads = threads;
          c.strict = strict;
          CHECK(same_values(flood_complex(x, LandmarkSpec::fps(80), c).complex, ref));
        }
      }
    }
    for (bool strict : {false, true}) {
      FloodConfig c = base;
      c.backend = Backend::kdtree;
      c.strict = strict;
      CHECK(same_values(flood_complex(x, LandmarkSpec::fps(80), c).complex, ref));
    }
    FloodConfig other_axis = base;
    other_axis.sort_axis = dim - 1;
    CHECK(same_values(flood_complex(x, LandmarkSpec::fps(80), other_axis).complex, ref));
  }
}

TEST_CASE("external landmarks") {
  const auto x = testing::uniform_cloud(300, 2, 31);
  const auto l = testing::uniform_cloud(12, 2, 32, 0.1, 0.9);
  const auto fc = flood_complex(x, LandmarkSpec::external(l), config_with(6));
  CHECK(fc.backend_used == Backend::kdtree);
  CHECK(fc.landmark_ids.empty());
  fc.complex.validate();
  for (std::size_t i = 0; i < fc.complex.size(); ++i) {
    if (fc.complex.dim(i) != 0) continue;
    const Index v = fc.complex.simplex(i).v[0];
    double best = INFINITY;
    for (std::size_t j = 0; j < x.size(); ++j) best = std::min(best, distance(l.point(v), x.point(j)));
    CHECK(std::abs(fc.complex.value(i) - best) <= 1e-12);
    CHECK(fc.complex.value(i) > 0.0);
  }
  check_against_naive(fc, x, 6);
}

TEST_CASE("landmarks given as a subset of X") {
  const auto x = testing::uniform_cloud(500, 3, 41);
  std::vector<Index> ids;
  for (Index i = 0; i < 500; i += 25) ids.push_back(i);
  const auto fc = flood_complex(x, LandmarkSpec::subset(ids), config_with(5));
  CHECK(fc.landmark_ids == ids);
  CHECK(fc.landmarks.size() == ids.size());
  check_against_naive(fc, x, 5);
}

TEST_CASE("exact gap brackets") {
  const PointCloud edge = PointCloud::from_rows({{0, 0}, {1, 0}});
  const auto [v, ub] = flood_value_exact_gap(edge, 1, edge);
  CHECK(v == 0.0);
  CHECK(ub == doctest::Approx(1.0));
  CHECK(0.5 <= ub);

  double prev = INFINITY;
  for (int m : {1, 2, 4, 8, 16, 32}) {
    const auto [dv, dub] = flood_value_exact_gap(edge, m, edge);
    CHECK(dub - dv <= prev);
    prev = dub - dv;
  }

  Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto x = testing::uniform_cloud(40, 2, 500 + t);
    const auto s = testing::uniform_cloud(3, 2, 600 + t);
    const auto [lo, hi] = flood_value_exact_gap(s, 16, x);
    const auto fine = flood_value_exact_gap(s, 512, x).first;
    CHECK(fine >= lo - 1e-12);
    CHECK(fine <= hi + 1e-12);
  }
}

TEST_CASE("uniform random sampler") {
  const auto x = testing::uniform_cloud(2000, 2, 71);
  FloodConfig c;
  c.sampler = Sampler::uniform_random;
  c.random_count = 50;
  c.random_seed = 3;
  const auto a = flood_complex(x, LandmarkSpec::fps(30), c);
  a.complex.validate();
  CHECK(a.max_grid_bound == 0.0);
  c.threads = 1;
  c.batch_size = 5;
  CHECK(same_values(flood_complex(x, LandmarkSpec::fps(30), c).complex, a.complex));
  c.backend = Backend::kdtree;
  CHECK(same_values(flood_complex(x, LandmarkSpec::fps(30), c).complex, a.complex));
  c.random_seed = 4;
  CHECK_FALSE(same_values(flood_complex(x, LandmarkSpec::fps(30), c).complex, a.complex));
  // Samples lie in conv(σ), so each value is below the exact value.
  for (std::size_t i = 0; i < a.complex.size(); ++i) {
    const Simplex& s = a.complex.simplex(i);
    std::vector<Index> ids(s.vertices().begin(), s.vertices().end());
    const auto verts = a.landmarks.select(ids);
    const auto [lo, hi] = flood_value_exact_gap(verts, 32, x);
    CHECK(a.complex.value(i) <= hi + 1e-12);
  }
}

TEST_CASE("configuration validation") {
  const auto x = testing::uniform_cloud(50, 2, 1);
  FloodConfig c;
  c.grid_resolution = 0;
  CHECK_THROWS_AS(flood_complex(x, LandmarkSpec::fps(5), c), Error);
  c = FloodConfig{};
  c.batch_size = 0;
  CHECK_THROWS_AS(flood_complex(x, LandmarkSpec::fps(5), c), Error);
  CHECK_THROWS_AS(flood_complex(PointCloud(2, {}), LandmarkSpec::fps(1)), Error);
  CHECK_THROWS_AS(flood_complex(x, LandmarkSpec::fps(0)), Error);
  const auto collinear = PointCloud::from_rows({{0, 0}, {1, 1}, {2, 2}});
  try {
    flood_complex(collinear, LandmarkSpec::fps(3));
    FAIL("expected a degeneracy error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degeneracy);
  }
}
