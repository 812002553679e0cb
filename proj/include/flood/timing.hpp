#pragma once

#include <array>
#include <chrono>
#include <string_view>

namespace flood {

/// Wall-clock seconds per pipeline stage.
struct StageTimings {
  enum Stage { landmarks, delaunay, masking, filtration, persistence, other, count };

  std::array<double, count> seconds{};

  double& operator[](Stage s) { return seconds[s]; }
  double operator[](Stage s) const { return seconds[s]; }
  double total() const {
    double t = 0;
    for (double s : seconds) t += s;
    return t;
  }

  static constexpr std::array<std::string_view, count> labels{
      "Landmark select.", "Delaunay triang.", "Masking", "Filtration", "PH computation", "Other"};
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace flood
