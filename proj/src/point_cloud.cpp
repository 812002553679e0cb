#include "flood/point_cloud.hpp"

#include <string>

#include "flood/error.hpp"

namespace flood {

PointCloud::PointCloud(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  require(dim == 2 || dim == 3, "point cloud dimension must be 2 or 3, got " + std::to_string(dim));
  require(coords_.size() % static_cast<std::size_t>(dim) == 0,
          "coordinate count is not a multiple of the dimension");
  for (double c : coords_) {
    if (!std::isfinite(c)) fail(ErrorKind::data, "point cloud contains a non-finite coordinate");
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  require(!rows.empty(), "cannot infer dimension of an empty row list");
  const auto dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& row : rows) {
    require(row.size() == dim, "ragged point rows");
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointCloud(static_cast<int>(dim), std::move(coords));
}

PointCloud PointCloud::select(std::span<const Index> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * dim_);
  for (Index i : indices) {
    require(i >= 0 && static_cast<std::size_t>(i) < size(), "selection index out of range");
    const auto p = point(i);
    out.insert(out.end(), p.begin(), p.end());
  }
  return PointCloud(dim_, std::move(out));
}

}  // namespace flood
