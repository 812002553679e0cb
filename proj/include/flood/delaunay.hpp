#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flood/point_cloud.hpp"
#include "flood/simplex.hpp"

namespace flood {

/// Simplicial complex of a Delaunay triangulation, closed under faces.
///
/// Vertex ids are indices into the point cloud the triangulation was built
/// from. simplices_by_dim[k] is sorted; facet_links[k][i] lists, for the
/// i-th k-simplex (k >= 1), the positions of its k + 1 facets in
/// simplices_by_dim[k - 1], the j-th facet omitting the j-th vertex.
struct Triangulation {
  int dim = 0;
  std::vector<Index> vertices;
  std::vector<std::vector<Simplex>> simplices_by_dim;
  std::vector<std::vector<std::array<Index, 4>>> facet_links;

  bool jitter_applied = false;
  std::size_t duplicates_removed = 0;
  std::vector<std::string> warnings;

  const std::vector<Simplex>& top_cells() const { return simplices_by_dim.at(dim); }
  std::size_t simplex_count() const;

  /// Position of `s` in simplices_by_dim[s.dim], or -1.
  Index find(const Simplex& s) const;

  /// Closes a set of top-dimensional cells under faces and fills in the
  /// facet incidence.
  static Triangulation from_top_cells(int dim, std::vector<Simplex> cells);
};

struct DelaunayOptions {
  std::uint64_t seed = 0x5eed;
  /// Jitter magnitude relative to the bounding-box diagonal, applied only
  /// after an exact predicate reports a degenerate configuration.
  double jitter_scale = 1e-12;
  int max_jitter_attempts = 8;
};

/// Delaunay triangulation by randomized incremental insertion with exact
/// predicates. Duplicate points are dropped (the smallest index survives)
/// and recorded in `warnings`. Throws ErrorKind::degeneracy when all points
/// are affinely dependent.
Triangulation delaunay(const PointCloud& points, const DelaunayOptions& options = {});

struct CircumsphereViolation {
  Index cell = -1;   ///< position in top_cells()
  Index point = -1;  ///< offending vertex id
  double depth = 0;  ///< how far inside the circumsphere
};

/// Lists vertices lying inside a top cell's circumsphere by more than
/// `tolerance` (floating-point circumcenters; a validation aid).
std::vector<CircumsphereViolation> circumsphere_check(const Triangulation& tri, const PointCloud& points,
                                                      double tolerance);

}  // namespace flood
