#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flood/datagen.hpp"
#include "flood/persistence.hpp"
#include "flood/point_cloud.hpp"

namespace flood {

/// Binary: "FPC1", u32 dim, u64 count, count*dim f64, all little-endian.
/// Text: one point per line, whitespace-separated, '#' starts a comment.
enum class CloudFormat { binary, text };

/// Binary for ".fpc" and ".bin", text otherwise.
CloudFormat format_for_path(const std::string& path);

/// Reads either format, detected by the magic bytes. Throws ErrorKind::data.
PointCloud read_point_cloud(const std::string& path);
void write_point_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format);
inline void write_point_cloud(const PointCloud& cloud, const std::string& path) {
  write_point_cloud(cloud, path, format_for_path(path));
}

std::string encode_point_cloud(const PointCloud& cloud, CloudFormat format);
PointCloud decode_point_cloud(const std::string& bytes);

/// FNV-1a over the binary encoding, as 16 hex digits.
std::string checksum(const PointCloud& cloud);

/// {"dims": {"0": [[b, d], ...], ...}}, infinite deaths as "inf", each
/// dimension sorted.
std::string diagram_to_json(const PersistenceDiagram& dgm);
PersistenceDiagram diagram_from_json(const std::string& text);
PersistenceDiagram read_diagram(const std::string& path);
void write_diagram(const PersistenceDiagram& dgm, const std::string& path);

/// {"box": side, "voids": [{"center": [x, y, z], "radius": r}, ...]}.
std::string voids_to_json(const std::vector<Void>& voids, double box);
std::vector<Void> voids_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace flood
