#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flood/cech.hpp"
#include "flood/datagen.hpp"
#include "flood/error.hpp"
#include "flood/flood.hpp"
#include "flood/io.hpp"
#include "flood/metrics.hpp"
#include "flood/persistence.hpp"
#include "flood/timing.hpp"

using namespace flood;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::argument:
      return 2;
    case ErrorKind::guard:
      return 4;
    case ErrorKind::integrity:
      return 1;
    default:
      return 3;
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

void log_timings(const StageTimings& t) {
  const double total = t.total();
  for (std::size_t s = 0; s < t.seconds.size(); ++s) {
    std::fprintf(stderr, "time %-18s %10.4f s %6.1f%%\n", std::string(StageTimings::labels[s]).c_str(), t.seconds[s],
                 total > 0 ? 100.0 * t.seconds[s] / total : 0.0);
  }
  std::fprintf(stderr, "time %-18s %10.4f s\n", "Total", total);
}

std::string format_scalar(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

struct GenOptions {
  std::string shape;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string mode = "uniform";
  std::size_t holes = 10;
  double box = 5.0;
  double min_radius = 0.1;
  double max_radius = 0.5;
  std::string voids_out;
  double major = 2.0;
  double minor = 0.5;
};

int run_gen(const GenOptions& o) {
  PointCloud cloud;
  std::vector<Void> voids;
  if (o.shape == "circle") {
    cloud = gen_circle(o.n ? o.n : 4096, o.mode == "random" ? CircleMode::random : CircleMode::uniform_angle, o.seed);
  } else if (o.shape == "swisscheese") {
    SwissCheeseParams p;
    p.points = o.n ? o.n : 200000;
    p.voids = o.holes;
    p.box = o.box;
    p.min_radius = o.min_radius;
    p.max_radius = o.max_radius;
    p.seed = o.seed;
    auto sc = gen_swisscheese(p);
    cloud = std::move(sc.cloud);
    voids = std::move(sc.voids);
  } else if (o.shape == "torus") {
    cloud = gen_torus(o.n ? o.n : 50000, o.major, o.minor, o.seed);
  } else {
    fail(ErrorKind::argument, "unknown shape '" + o.shape + "' (circle, swisscheese, torus)");
  }
  if (!o.out.empty()) write_point_cloud(cloud, o.out);
  if (o.shape == "swisscheese") {
    const std::string sidecar = !o.voids_out.empty() ? o.voids_out : (o.out.empty() ? "" : o.out + ".voids.json");
    if (!sidecar.empty()) {
      write_file(sidecar, voids_to_json(voids, o.box));
      std::fprintf(stderr, "voids written to %s\n", sidecar.c_str());
    }
  }
  if (o.out.empty()) std::cout << encode_point_cloud(cloud, CloudFormat::text);
  std::printf("n=%zu d=%d checksum=%s\n", cloud.size(), cloud.dim(), checksum(cloud).c_str());
  return 0;
}

struct FloodOptions {
  std::string input;
  std::size_t landmarks = 2000;
  std::string landmark_file;
  Index fps_start = 0;
  int grid = 20;
  std::size_t batch = 256;
  std::string backend = "masked";
  bool strict = false;
  std::string sampler = "grid";
  std::size_t random_count = 64;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool include_zero = false;
  std::string out;
};

FloodConfig make_config(const FloodOptions& o) {
  FloodConfig c;
  c.grid_resolution = o.grid;
  c.batch_size = o.batch;
  c.strict = o.strict;
  c.threads = o.threads;
  c.random_count = o.random_count;
  c.random_seed = o.seed;
  if (o.backend == "masked") {
    c.backend = Backend::masked_batch;
  } else if (o.backend == "kdtree") {
    c.backend = Backend::kdtree;
  } else {
    fail(ErrorKind::argument, "unknown backend '" + o.backend + "' (masked, kdtree)");
  }
  if (o.sampler == "grid") {
    c.sampler = Sampler::grid;
  } else if (o.sampler == "random") {
    c.sampler = Sampler::uniform_random;
  } else {
    fail(ErrorKind::argument, "unknown sampler '" + o.sampler + "' (grid, random)");
  }
  return c;
}

int run_flood(const FloodOptions& o) {
  Stopwatch clock;
  const auto x = read_point_cloud(o.input);
  const double read_seconds = clock.lap();
  LandmarkSpec spec;
  if (!o.landmark_file.empty()) {
    spec = LandmarkSpec::external(read_point_cloud(o.landmark_file));
  } else {
    if (o.landmarks > x.size()) {
      fail(ErrorKind::argument, "--landmarks " + std::to_string(o.landmarks) + " exceeds the " +
                                    std::to_string(x.size()) + " input points");
    }
    spec = LandmarkSpec::fps(o.landmarks, o.fps_start);
  }
  const auto config = make_config(o);
  StageTimings t;
  t[StageTimings::other] += read_seconds;
  const auto fc = flood_complex(x, spec, config, &t);
  for (const auto& w : fc.triangulation.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  clock.lap();
  ReductionOptions ro;
  ro.include_zero_persistence = o.include_zero;
  const auto dgm = persistence_diagram(fc.complex, ro);
  t[StageTimings::persistence] += clock.lap();
  emit(o.out, diagram_to_json(dgm));
  t[StageTimings::other] += clock.lap();
  std::fprintf(stderr, "points %zu landmarks %zu simplices %zu backend %s grid bound %.6g\n", x.size(),
               fc.landmarks.size(), fc.complex.size(), fc.backend_used == Backend::kdtree ? "kdtree" : "masked",
               fc.max_grid_bound);
  log_timings(t);
  return 0;
}

int run_cech(const std::string& input, int max_dim, const std::string& out) {
  const auto x = read_point_cloud(input);
  const auto dgm = persistence_diagram(cech_filtration(x, max_dim));
  emit(out, diagram_to_json(dgm));
  return 0;
}

int run_bottleneck(const std::string& a, const std::string& b, int dim) {
  std::printf("%s\n", format_scalar(bottleneck_distance(read_diagram(a), read_diagram(b), dim)).c_str());
  return 0;
}

struct BenchOptions {
  std::string shape = "swisscheese";
  std::vector<std::size_t> points{100000};
  std::size_t landmarks = 1000;
  std::size_t repeats = 1;
  int grid = 10;
  std::size_t holes = 10;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
};

PointCloud bench_cloud(const BenchOptions& o, std::size_t n, std::uint64_t seed) {
  if (o.shape == "swisscheese") {
    SwissCheeseParams p;
    p.points = n;
    p.voids = o.holes;
    p.seed = seed;
    return gen_swisscheese(p).cloud;
  }
  if (o.shape == "torus") return gen_torus(n, 2.0, 0.5, seed);
  if (o.shape == "circle") return gen_circle(n, CircleMode::random, seed);
  fail(ErrorKind::argument, "unknown shape '" + o.shape + "' (circle, swisscheese, torus)");
}

int run_bench(const BenchOptions& o) {
  require(o.repeats >= 1, "--repeats must be >= 1");
  std::string csv = "points,stage,seconds,percent\n";
  if (o.points.size() == 1) csv = "stage,seconds,percent\n";
  for (std::size_t n : o.points) {
    StageTimings sum;
    for (std::size_t r = 0; r < o.repeats; ++r) {
      const auto x = bench_cloud(o, n, o.seed + r);
      FloodConfig c;
      c.grid_resolution = o.grid;
      c.threads = o.threads;
      StageTimings t;
      const auto fc = flood_complex(x, LandmarkSpec::fps(std::min(o.landmarks, x.size())), c, &t);
      Stopwatch clock;
      [[maybe_unused]] const auto dgm = persistence_diagram(fc.complex);
      t[StageTimings::persistence] += clock.lap();
      for (std::size_t s = 0; s < t.seconds.size(); ++s) sum.seconds[s] += t.seconds[s];
    }
    const double total = sum.total();
    for (std::size_t s = 0; s < sum.seconds.size(); ++s) {
      const double sec = sum.seconds[s] / static_cast<double>(o.repeats);
      char line[160];
      std::snprintf(line, sizeof line, "%s,%.6f,%.3f\n", std::string(StageTimings::labels[s]).c_str(), sec,
                    total > 0 ? 100.0 * sum.seconds[s] / total : 0.0);
      if (o.points.size() > 1) csv += std::to_string(n) + ",";
      csv += line;
    }
    std::fprintf(stderr, "bench n=%zu total %.4f s (mean of %zu)\n", n, total / static_cast<double>(o.repeats),
                 o.repeats);
  }
  emit(o.out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flood complex persistent homology"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic point cloud");
  g->add_option("shape", gen.shape, "circle, swisscheese or torus")->required();
  g->add_option("--n", gen.n, "Number of points (defaults: 4096, 200000, 50000)");
  g->add_option("--seed", gen.seed, "Random seed")->envname("FLOOD_SEED");
  g->add_option("--out", gen.out, "Output file; .fpc/.bin binary, otherwise text");
  g->add_option("--mode", gen.mode, "circle: uniform or random")->check(CLI::IsMember({"uniform", "random"}));
  g->add_option("--holes", gen.holes, "swisscheese: number of voids");
  g->add_option("--box", gen.box, "swisscheese: box side");
  g->add_option("--min-radius", gen.min_radius, "swisscheese: smallest void radius");
  g->add_option("--max-radius", gen.max_radius, "swisscheese: largest void radius");
  g->add_option("--voids-out", gen.voids_out, "swisscheese: voids JSON (default <out>.voids.json)");
  g->add_option("--major", gen.major, "torus: major radius");
  g->add_option("--minor", gen.minor, "torus: minor radius");

  FloodOptions fl;
  auto* f = app.add_subcommand("flood", "Flood complex diagrams of a point cloud");
  f->add_option("--input,-i", fl.input, "Point cloud file")->required();
  auto* lm = f->add_option("--landmarks,-k", fl.landmarks, "Number of FPS landmarks")->envname("FLOOD_LANDMARKS");
  f->add_option("--landmark-file", fl.landmark_file, "External landmark point cloud")->excludes(lm);
  f->add_option("--fps-start", fl.fps_start, "Index of the first FPS landmark");
  f->add_option("--grid,-m", fl.grid, "Grid resolution m")->envname("FLOOD_GRID");
  f->add_option("--batch", fl.batch, "Top cells per batch")->envname("FLOOD_BATCH");
  f->add_option("--backend", fl.backend, "masked or kdtree")->envname("FLOOD_BACKEND");
  f->add_flag("--strict", fl.strict, "Disable the early exit");
  f->add_option("--sampler", fl.sampler, "grid or random")->envname("FLOOD_SAMPLER");
  f->add_option("--random-count", fl.random_count, "Random sampler: points per face");
  f->add_option("--seed", fl.seed, "Random sampler seed")->envname("FLOOD_SEED");
  f->add_option("--threads", fl.threads, "Worker threads (0 = all cores)")->envname("FLOOD_THREADS");
  f->add_flag("--include-zero", fl.include_zero, "Keep zero-persistence pairs");
  f->add_option("--out,-o", fl.out, "Diagram JSON (default stdout)");

  std::string cech_in, cech_out;
  int cech_dim = 2;
  auto* c = app.add_subcommand("cech", "Exact Cech diagrams of a small point cloud");
  c->add_option("--input,-i", cech_in, "Point cloud file")->required();
  c->add_option("--max-dim", cech_dim, "Largest simplex dimension");
  c->add_option("--out,-o", cech_out, "Diagram JSON (default stdout)");

  std::string bn_a, bn_b;
  int bn_dim = 0;
  auto* b = app.add_subcommand("bottleneck", "Bottleneck distance between two diagram files");
  b->add_option("a", bn_a, "First diagram JSON")->required();
  b->add_option("b", bn_b, "Second diagram JSON")->required();
  b->add_option("--dim,-d", bn_dim, "Homology dimension");

  BenchOptions be;
  auto* bench = app.add_subcommand("bench", "Stage timing breakdown on synthetic data");
  bench->add_option("--shape", be.shape, "swisscheese, torus or circle");
  bench->add_option("--points,-n", be.points, "Point counts (one or more)");
  bench->add_option("--landmarks,-k", be.landmarks, "Number of FPS landmarks")->envname("FLOOD_LANDMARKS");
  bench->add_option("--repeats", be.repeats, "Runs per point count");
  bench->add_option("--grid,-m", be.grid, "Grid resolution m")->envname("FLOOD_GRID");
  bench->add_option("--holes", be.holes, "swisscheese: number of voids");
  bench->add_option("--seed", be.seed, "Base seed")->envname("FLOOD_SEED");
  bench->add_option("--threads", be.threads, "Worker threads (0 = all cores)")->envname("FLOOD_THREADS");
  bench->add_option("--out,-o", be.out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "ERR_USAGE: %s\n", one_line(e.what()).c_str());
    return 2;
  }

  try {
    if (*g) return run_gen(gen);
    if (*f) return run_flood(fl);
    if (*c) return run_cech(cech_in, cech_dim, cech_out);
    if (*b) return run_bottleneck(bn_a, bn_b, bn_dim);
    if (*bench) return run_bench(be);
  } catch (const Error& e) {
    std::fprintf(stderr, "ERR_%s: %s\n", std::string(to_string(e.kind())).c_str(), one_line(e.what()).c_str());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ERR_INTERNAL: %s\n", one_line(e.what()).c_str());
    return 1;
  }
  return 2;
}
