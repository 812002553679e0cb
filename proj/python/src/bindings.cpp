#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <variant>
#include <vector>

#include "flood/cech.hpp"
#include "flood/datagen.hpp"
#include "flood/error.hpp"
#include "flood/flood.hpp"
#include "flood/geometry.hpp"
#include "flood/metrics.hpp"
#include "flood/persistence.hpp"

namespace py = pybind11;
using namespace flood;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointCloud to_cloud(const Array& a) {
  if (a.ndim() != 2) throw py::value_error("expected an (n, d) array");
  const auto* p = a.data();
  return PointCloud(static_cast<int>(a.shape(1)), std::vector<double>(p, p + a.size()));
}

py::array_t<double> to_array(const PointCloud& c) {
  py::array_t<double> out({static_cast<py::ssize_t>(c.size()), static_cast<py::ssize_t>(c.dim())});
  std::copy(c.coords().begin(), c.coords().end(), out.mutable_data());
  return out;
}

py::array_t<double> pairs_array(const std::vector<PersistenceDiagram::Point>& pts) {
  py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto r = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    r(i, 0) = pts[i].first;
    r(i, 1) = pts[i].second;
  }
  return out;
}

std::vector<PersistenceDiagram::Point> from_pairs(const Array& a) {
  if (a.size() == 0) return {};
  if (a.ndim() != 2 || a.shape(1) != 2) throw py::value_error("expected an (n, 2) array of (birth, death)");
  auto r = a.unchecked<2>();
  std::vector<PersistenceDiagram::Point> out;
  for (py::ssize_t i = 0; i < r.shape(0); ++i) out.emplace_back(r(i, 0), r(i, 1));
  return out;
}

py::dict diagram_dict(const PersistenceDiagram& d, int max_dim) {
  py::dict out;
  for (int k = 0; k <= max_dim; ++k) out[py::int_(k)] = pairs_array(d[k]);
  return out;
}

using Landmarks = std::variant<std::size_t, std::vector<Index>, Array>;

LandmarkSpec landmark_spec(const Landmarks& l, Index fps_start) {
  if (auto* k = std::get_if<std::size_t>(&l)) return LandmarkSpec::fps(*k, fps_start);
  if (auto* ids = std::get_if<std::vector<Index>>(&l)) return LandmarkSpec::subset(*ids);
  return LandmarkSpec::external(to_cloud(std::get<Array>(l)));
}

FloodConfig config(int grid, std::size_t batch, const std::string& backend, bool strict, unsigned threads) {
  FloodConfig c;
  c.grid_resolution = grid;
  c.batch_size = batch;
  c.strict = strict;
  c.threads = threads;
  if (backend == "masked") {
    c.backend = Backend::masked_batch;
  } else if (backend == "kdtree") {
    c.backend = Backend::kdtree;
  } else {
    throw py::value_error("backend must be 'masked' or 'kdtree'");
  }
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Flood complex persistent homology";

  static py::exception<Error> base(m, "FloodError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::argument) {
        PyErr_SetString(PyExc_ValueError, e.what());
      } else {
        const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
        PyErr_SetString(base.ptr(), msg.c_str());
      }
    }
  });

  m.def("gen_circle", [](std::size_t n, bool random, std::uint64_t seed) {
        return to_array(gen_circle(n, random ? CircleMode::random : CircleMode::uniform_angle, seed));
      },
      py::arg("n"), py::arg("random") = false, py::arg("seed") = 0);

  m.def("gen_swisscheese",
        [](std::size_t n, std::size_t voids, double box, double min_radius, double max_radius, std::uint64_t seed) {
          SwissCheeseParams p;
          p.points = n;
          p.voids = voids;
          p.box = box;
          p.min_radius = min_radius;
          p.max_radius = max_radius;
          p.seed = seed;
          const auto sc = gen_swisscheese(p);
          py::list vs;
          for (const auto& v : sc.voids) vs.append(py::make_tuple(py::make_tuple(v.center[0], v.center[1], v.center[2]), v.radius));
          return py::make_tuple(to_array(sc.cloud), vs);
        },
        py::arg("n"), py::arg("voids"), py::arg("box") = 5.0, py::arg("min_radius") = 0.1,
        py::arg("max_radius") = 0.5, py::arg("seed") = 0);

  m.def("gen_torus", [](std::size_t n, double major, double minor, std::uint64_t seed) {
        return to_array(gen_torus(n, major, minor, seed));
      },
      py::arg("n"), py::arg("major") = 2.0, py::arg("minor") = 0.5, py::arg("seed") = 0);

  m.def("farthest_point_sampling", [](const Array& x, std::size_t k, Index start) {
        return farthest_point_sampling(to_cloud(x), k, start);
      },
      py::arg("points"), py::arg("k"), py::arg("start") = 0);

  m.def("flood_filtration",
        [](const Array& x, const Landmarks& l, Index fps_start, int grid, std::size_t batch, const std::string& backend,
           bool strict, unsigned threads) {
          FloodComplex fc;
          {
            py::gil_scoped_release release;
            fc = flood_complex(to_cloud(x), landmark_spec(l, fps_start), config(grid, batch, backend, strict, threads));
          }
          py::list simplices;
          for (const auto& s : fc.complex.simplices()) {
            py::tuple t(s.dim + 1);
            for (int i = 0; i <= s.dim; ++i) t[i] = s.vertices()[i];
            simplices.append(t);
          }
          py::array_t<double> values(static_cast<py::ssize_t>(fc.complex.size()));
          std::copy(fc.complex.values().begin(), fc.complex.values().end(), values.mutable_data());
          return py::make_tuple(simplices, values, to_array(fc.landmarks), fc.max_grid_bound);
        },
        py::arg("points"), py::arg("landmarks"), py::arg("fps_start") = 0, py::arg("grid") = 20,
        py::arg("batch") = 256, py::arg("backend") = "masked", py::arg("strict") = false, py::arg("threads") = 0);

  m.def("flood_persistence",
        [](const Array& x, const Landmarks& l, Index fps_start, int grid, std::size_t batch, const std::string& backend,
           bool strict, unsigned threads, bool include_zero) {
          PersistenceDiagram d;
          int top = 0;
          {
            py::gil_scoped_release release;
            const auto fc =
                flood_complex(to_cloud(x), landmark_spec(l, fps_start), config(grid, batch, backend, strict, threads));
            ReductionOptions o;
            o.include_zero_persistence = include_zero;
            d = persistence_diagram(fc.complex, o);
            top = fc.landmarks.dim() - 1;
          }
          return diagram_dict(d, top);
        },
        py::arg("points"), py::arg("landmarks"), py::arg("fps_start") = 0, py::arg("grid") = 20,
        py::arg("batch") = 256, py::arg("backend") = "masked", py::arg("strict") = false, py::arg("threads") = 0,
        py::arg("include_zero") = false);

  m.def("cech_persistence", [](const Array& x, int max_dim, std::size_t max_points) {
        const auto fc = cech_filtration(to_cloud(x), max_dim, max_points);
        return diagram_dict(persistence_diagram(fc), std::max(0, max_dim - 1));
      },
      py::arg("points"), py::arg("max_dim") = 2, py::arg("max_points") = cech_max_points);

  m.def("bottleneck_distance", [](const Array& a, const Array& b) {
        const auto pa = from_pairs(a), pb = from_pairs(b);
        return bottleneck_distance(pa, pb);
      },
      py::arg("a"), py::arg("b"));

  m.def("hausdorff_distance", [](const Array& a, const Array& b) { return hausdorff_distance(to_cloud(a), to_cloud(b)); },
        py::arg("a"), py::arg("b"));
  m.def("directed_hausdorff", [](const Array& a, const Array& b) { return directed_hausdorff(to_cloud(a), to_cloud(b)); },
        py::arg("a"), py::arg("b"));
}
