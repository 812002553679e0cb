#include "flood/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flood/error.hpp"

namespace flood {

namespace {

constexpr char magic[4] = {'F', 'P', 'C', '1'};

template <class T>
void put_le(std::string& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

template <class T>
T get_le(const std::string& in, std::size_t at) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

PointCloud decode_text(const std::string& text) {
  std::vector<double> coords;
  int dim = 0;
  std::size_t line_no = 0;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    int fields = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r' || *p == ',')) ++p;
      if (p == end) break;
      double v = 0.0;
      const auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) {
        fail(ErrorKind::data, "line " + std::to_string(line_no) + ": not a number near '" +
                                  std::string(p, std::min<std::size_t>(end - p, 16)) + "'");
      }
      coords.push_back(v);
      ++fields;
      p = next;
    }
    if (fields == 0) continue;
    if (dim == 0) dim = fields;
    if (fields != dim) {
      fail(ErrorKind::data, "line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                                " coordinates, found " + std::to_string(fields));
    }
  }
  if (dim == 0) fail(ErrorKind::data, "point file contains no points");
  if (dim != 2 && dim != 3) fail(ErrorKind::data, "points have " + std::to_string(dim) + " coordinates, need 2 or 3");
  return PointCloud(dim, std::move(coords));
}

}  // namespace

CloudFormat format_for_path(const std::string& path) {
  return ends_with(path, ".fpc") || ends_with(path, ".bin") ? CloudFormat::binary : CloudFormat::text;
}

std::string encode_point_cloud(const PointCloud& cloud, CloudFormat format) {
  std::string out;
  if (format == CloudFormat::binary) {
    out.append(magic, 4);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(cloud.dim()));
    put_le<std::uint64_t>(out, cloud.size());
    for (double v : cloud.coords()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    return out;
  }
  char buf[32];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t c = 0; c < p.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", p[c]);
      if (c) out.push_back(' ');
      out += buf;
    }
    out.push_back('\n');
  }
  return out;
}

PointCloud decode_point_cloud(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), magic, 4) != 0) return decode_text(bytes);
  if (bytes.size() < 16) fail(ErrorKind::data, "truncated FPC1 header");
  const auto dim = get_le<std::uint32_t>(bytes, 4);
  const auto count = get_le<std::uint64_t>(bytes, 8);
  if (dim != 2 && dim != 3) fail(ErrorKind::data, "FPC1 dimension " + std::to_string(dim) + " is not 2 or 3");
  if (count > (bytes.size() - 16) / 8 / dim || bytes.size() != 16 + count * dim * 8) {
    fail(ErrorKind::data, "FPC1 payload size does not match header (" + std::to_string(count) + " x " +
                              std::to_string(dim) + ")");
  }
  std::vector<double> coords(count * dim);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = std::bit_cast<double>(get_le<std::uint64_t>(bytes, 16 + 8 * i));
  return PointCloud(static_cast<int>(dim), std::move(coords));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::data, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::data, "cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorKind::data, "write to '" + path + "' failed");
}

PointCloud read_point_cloud(const std::string& path) {
  try {
    return decode_point_cloud(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::data) fail(ErrorKind::data, path + ": " + e.what());
    throw;
  }
}

void write_point_cloud(const PointCloud& cloud, const std::string& path, CloudFormat format) {
  write_file(path, encode_point_cloud(cloud, format));
}

std::string checksum(const PointCloud& cloud) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : encode_point_cloud(cloud, CloudFormat::binary)) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string diagram_to_json(const PersistenceDiagram& dgm) {
  nlohmann::ordered_json dims = nlohmann::ordered_json::object();
  for (int k = 0; k < dgm.dims(); ++k) {
    auto points = dgm[k];
    std::sort(points.begin(), points.end());
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [b, d] : points) {
      arr.push_back({b, std::isinf(d) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(d)});
    }
    dims[std::to_string(k)] = std::move(arr);
  }
  nlohmann::ordered_json doc;
  doc["dims"] = std::move(dims);
  return doc.dump() + "\n";
}

PersistenceDiagram diagram_from_json(const std::string& text) {
  auto value = [](const nlohmann::json& v) {
    if (v.is_string()) {
      if (v.get<std::string>() == "inf") return infinite_death;
      fail(ErrorKind::data, "unexpected string '" + v.get<std::string>() + "' in diagram");
    }
    return v.get<double>();
  };
  try {
    const auto doc = nlohmann::json::parse(text);
    std::vector<std::vector<PersistenceDiagram::Point>> dims;
    for (const auto& [key, points] : doc.at("dims").items()) {
      std::size_t used = 0;
      const int k = std::stoi(key, &used);
      if (used != key.size() || k < 0) fail(ErrorKind::data, "bad dimension key '" + key + "'");
      if (k >= static_cast<int>(dims.size())) dims.resize(k + 1);
      for (const auto& pt : points) {
        if (!pt.is_array() || pt.size() != 2) fail(ErrorKind::data, "diagram point must be [birth, death]");
        const double b = value(pt[0]), d = value(pt[1]);
        if (!(b <= d)) fail(ErrorKind::data, "diagram point with death before birth");
        dims[k].emplace_back(b, d);
      }
    }
    PersistenceDiagram out(std::move(dims));
    out.sort();
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::data, std::string("malformed diagram JSON: ") + e.what());
  } catch (const std::logic_error&) {
    fail(ErrorKind::data, "bad dimension key in diagram JSON");
  }
}

PersistenceDiagram read_diagram(const std::string& path) {
  try {
    return diagram_from_json(read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::data) fail(ErrorKind::data, path + ": " + e.what());
    throw;
  }
}

void write_diagram(const PersistenceDiagram& dgm, const std::string& path) { write_file(path, diagram_to_json(dgm)); }

std::string voids_to_json(const std::vector<Void>& voids, double box) {
  nlohmann::ordered_json doc;
  doc["box"] = box;
  doc["voids"] = nlohmann::ordered_json::array();
  for (const auto& v : voids) {
    nlohmann::ordered_json o;
    o["center"] = v.center;
    o["radius"] = v.radius;
    doc["voids"].push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

std::vector<Void> voids_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    std::vector<Void> out;
    for (const auto& o : doc.at("voids")) {
      Void v;
      v.center = o.at("center").get<std::array<double, 3>>();
      v.radius = o.at("radius").get<double>();
      out.push_back(v);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::data, std::string("malformed voids JSON: ") + e.what());
  }
}

}  // namespace flood
