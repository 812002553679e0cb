#include <doctest.h>

#include <set>

#include "flood/delaunay.hpp"
#include "flood/error.hpp"
#include "flood/predicates.hpp"
#include "support.hpp"

using namespace flood;
using flood::testing::circle_cloud;
using flood::testing::uniform_cloud;

namespace {

void check_closure(const Triangulation& tri) {
  for (int k = 1; k <= tri.dim; ++k) {
    const auto& list = tri.simplices_by_dim[k];
    CHECK(std::adjacent_find(list.begin(), list.end()) == list.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      const unsigned all = (1u << (k + 1)) - 1;
      for (int j = 0; j <= k; ++j) {
        const Index f = tri.facet_links[k][i][j];
        REQUIRE(f >= 0);
        CHECK(tri.simplices_by_dim[k - 1][f] == list[i].face(all & ~(1u << j)));
      }
    }
  }
}

}  // namespace

TEST_CASE("predicates") {
  const std::vector<double> ccw{0, 0, 1, 0, 0, 1};
  CHECK(predicates::orientation(ccw, 2) == 1);
  const std::vector<double> cw{0, 0, 0, 1, 1, 0};
  CHECK(predicates::orientation(cw, 2) == -1);
  CHECK(predicates::orientation(std::vector<double>{0, 0, 1, 1, 2, 2}, 2) == 0);
  for (const auto& tri : {ccw, cw}) {
    CHECK(predicates::in_circumsphere(tri, std::vector<double>{0.4, 0.4}, 2) == 1);
    CHECK(predicates::in_circumsphere(tri, std::vector<double>{2, 2}, 2) == -1);
    CHECK(predicates::in_circumsphere(tri, std::vector<double>{1, 1}, 2) == 0);
  }
  const std::vector<double> tet{0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1};
  const std::vector<double> tet_flipped{1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(predicates::orientation(tet, 3) == -predicates::orientation(tet_flipped, 3));
  for (const auto& t : {tet, tet_flipped}) {
    CHECK(predicates::in_circumsphere(t, std::vector<double>{0.2, 0.2, 0.2}, 3) == 1);
    CHECK(predicates::in_circumsphere(t, std::vector<double>{2, 2, 2}, 3) == -1);
    CHECK(predicates::in_circumsphere(t, std::vector<double>{1, 1, 1}, 3) == 0);
  }
  // Nearly degenerate: resolved exactly.
  CHECK(predicates::orientation(std::vector<double>{0, 0, 1, 1, 2, 2 + 0x1p-51}, 2) == 1);
}

TEST_CASE("square: two triangles, five edges") {
  const PointCloud square(2, {0, 0, 1, 0, 1, 1, 0, 1});
  const auto tri = delaunay(square);
  CHECK(tri.simplices_by_dim[0].size() == 4);
  CHECK(tri.simplices_by_dim[1].size() == 5);
  CHECK(tri.simplices_by_dim[2].size() == 2);
  CHECK(tri.jitter_applied);
  check_closure(tri);
  CHECK(delaunay(square).simplices_by_dim == tri.simplices_by_dim);
}

TEST_CASE("single tetrahedron") {
  const PointCloud pts(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1});
  const auto tri = delaunay(pts);
  CHECK(tri.simplices_by_dim[3].size() == 1);
  CHECK(tri.simplices_by_dim[2].size() == 4);
  CHECK(tri.simplices_by_dim[1].size() == 6);
  CHECK_FALSE(tri.jitter_applied);
  CHECK(circumsphere_check(tri, pts, 1e-9).empty());
}

TEST_CASE("random planar points form a triangulated disk") {
  const auto pts = uniform_cloud(100, 2, 21);
  const auto tri = delaunay(pts);
  const auto v = tri.simplices_by_dim[0].size(), e = tri.simplices_by_dim[1].size(),
             f = tri.simplices_by_dim[2].size();
  CHECK(v == 100);
  CHECK(static_cast<long>(v) - static_cast<long>(e) + static_cast<long>(f) == 1);
  CHECK(e <= 3 * v - 6);
  check_closure(tri);
  CHECK(circumsphere_check(tri, pts, 1e-7).empty());
  CHECK(delaunay(pts).simplices_by_dim == tri.simplices_by_dim);
}

TEST_CASE("random 3D points") {
  const auto pts = uniform_cloud(300, 3, 5);
  const auto tri = delaunay(pts);
  check_closure(tri);
  CHECK(tri.vertices.size() == 300);
  CHECK(circumsphere_check(tri, pts, 1e-7).empty());
  // Euler characteristic of a triangulated ball.
  long chi = 0;
  for (int k = 0; k <= 3; ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(tri.simplices_by_dim[k].size());
  CHECK(chi == 1);
}

TEST_CASE("cocircular and grid-aligned input is handled by jitter") {
  const auto circle = circle_cloud(12);
  const auto tri = delaunay(circle);
  CHECK(tri.simplices_by_dim[2].size() == 10);
  CHECK(tri.simplices_by_dim[1].size() == 21);
  CHECK(circumsphere_check(tri, circle, 1e-7).empty());

  std::vector<double> grid;
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) {
      for (int z = 0; z < 4; ++z) {
        grid.insert(grid.end(), {double(x), double(y), double(z)});
      }
    }
  }
  const PointCloud cube(3, grid);
  const auto t3 = delaunay(cube);
  check_closure(t3);
  CHECK(t3.vertices.size() == 64);
  CHECK(circumsphere_check(t3, cube, 1e-7).empty());
}

TEST_CASE("duplicates and degeneracy") {
  const PointCloud dup(2, {0, 0, 1, 0, 0, 1, 1, 0, 0, 0});
  const auto tri = delaunay(dup);
  CHECK(tri.duplicates_removed == 2);
  CHECK(tri.vertices == std::vector<Index>{0, 1, 2});
  CHECK_FALSE(tri.warnings.empty());

  const PointCloud line(2, {0, 0, 1, 1, 2, 2, 3, 3});
  try {
    delaunay(line);
    FAIL("expected a degeneracy error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degeneracy);
  }
  const PointCloud plane(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 2, 3, 0});
  CHECK_THROWS_AS(delaunay(plane), Error);
}

TEST_CASE("circumsphere check flags a flipped diagonal") {
  // Non-cocircular quadrilateral; the Delaunay diagonal is 1-3.
  const PointCloud quad(2, {0, 0, 2, -0.2, 4, 0, 2, 3});
  const auto good = delaunay(quad);
  CHECK(circumsphere_check(good, quad, 1e-9).empty());
  CHECK(good.find(Simplex{1, 3}) >= 0);
  const auto bad = Triangulation::from_top_cells(2, {Simplex{0, 1, 2}, Simplex{0, 2, 3}});
  // In-circle is symmetric for a convex quadrilateral: each triangle of the
  // wrong diagonal contains the opposite vertex.
  const auto violations = circumsphere_check(bad, quad, 1e-9);
  REQUIRE(violations.size() == 2);
  CHECK(violations[0].point == 3);
  CHECK(violations[1].point == 1);
}
