#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trilat/classifier.hpp"
#include "trilat/errors.hpp"
#include "trilat/objective.hpp"
#include "trilat/oracle.hpp"
#include "trilat/regions.hpp"
#include "trilat/thresholds.hpp"

namespace py = pybind11;
using namespace trilat;

namespace {

std::array<Point2, 3> points3(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() != 3) throw py::value_error("three sensors required");
  return {Point2{xy[0].first, xy[0].second}, Point2{xy[1].first, xy[1].second},
          Point2{xy[2].first, xy[2].second}};
}

}  // namespace

PYBIND11_MODULE(_trilat, m) {
  m.doc() = "global minimizers of the three-sensor trilateration objective";

  static py::exception<Error> error_type(m, "TrilatError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type.ptr())(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<Point2>(m, "Point2")
      .def(py::init<double, double>(), py::arg("x") = 0.0, py::arg("y") = 0.0)
      .def_readwrite("x", &Point2::x)
      .def_readwrite("y", &Point2::y)
      .def("__iter__", [](const Point2& p) { return py::iter(py::make_tuple(p.x, p.y)); })
      .def("__repr__", [](const Point2& p) {
        return "Point2(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<SensorConfig>(m, "SensorConfig")
      .def(py::init([](const std::vector<std::pair<double, double>>& z, const std::array<double, 3>& d) {
             SensorConfig c{points3(z), d};
             c.validate();
             return c;
           }),
           py::arg("sensors"), py::arg("ranges"))
      .def_static("canonical", &SensorConfig::canonical, py::arg("r"), py::arg("s"), py::arg("d1"), py::arg("d2"),
                  py::arg("d3"))
      .def_property_readonly("sensors",
                             [](const SensorConfig& c) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& p : c.z) out.emplace_back(p.x, p.y);
                               return out;
                             })
      .def_property_readonly("ranges", [](const SensorConfig& c) { return c.d; })
      .def("scale", &SensorConfig::scale);

  m.def("objective", &objective_value, py::arg("config"), py::arg("w"));

  py::class_<CandidatePoint>(m, "CandidatePoint")
      .def_readonly("location", &CandidatePoint::location)
      .def_property_readonly("role", [](const CandidatePoint& c) { return std::string(to_string(c.role)); });

  py::class_<NearThreshold>(m, "NearThreshold")
      .def_readonly("name", &NearThreshold::name)
      .def_readonly("signed_distance", &NearThreshold::signed_distance);

  py::class_<SolutionSet>(m, "SolutionSet")
      .def_readonly("points", &SolutionSet::points)
      .def_readonly("objective_value", &SolutionSet::objective_value)
      .def_property_readonly("multiplicity", &SolutionSet::multiplicity)
      .def_property_readonly("derivation",
                             [](const SolutionSet& s) { return std::string(to_string(s.derivation.kind)); })
      .def_property_readonly("row", [](const SolutionSet& s) { return s.derivation.row; })
      .def_readonly("near_threshold", &SolutionSet::near_threshold)
      .def_readonly("notes", &SolutionSet::notes);

  auto options = [](double tol) {
    SolveOptions o;
    o.tol = tol;
    return o;
  };
  m.def("solve", [=](const SensorConfig& c, double tol) { return solve(c, options(tol)); }, py::arg("config"),
        py::arg("tol") = 1e-9);
  m.def("solve_general", [=](const SensorConfig& c, double tol) { return solve_general(c, options(tol)); },
        py::arg("config"), py::arg("tol") = 1e-9);
  m.def("solve_isosceles",
        [=](double r, double s, double d1, double d3, double tol) { return solve_isosceles(r, s, d1, d3, options(tol)); },
        py::arg("r"), py::arg("s"), py::arg("d1"), py::arg("d3"), py::arg("tol") = 1e-9);
  m.def("solve_equilateral",
        [=](double r, double d1, double d3, double tol) { return solve_equilateral(r, d1, d3, options(tol)); },
        py::arg("r"), py::arg("d1"), py::arg("d3"), py::arg("tol") = 1e-9);

  m.def("thresholds", [](double r, double s, double d1, double d3) {
    py::dict out;
    for (const auto& t : compute_thresholds(r, s, d1, d3).all()) out[py::str(t.name)] = t.value;
    return out;
  }, py::arg("r"), py::arg("s"), py::arg("d1"), py::arg("d3"));
  m.def("d3_star", [](double r, double s, double d1) {
    auto st = d3_star(r, s, d1);
    return py::make_tuple(st.d3, st.t);
  }, py::arg("r"), py::arg("s"), py::arg("d1"));

  m.def("region_labels", [](const SensorConfig& c) {
    const RegionTopology t = region_topology(c);
    py::dict out;
    for (unsigned b = 0; b < 8; ++b) {
      RegionLabel label{static_cast<std::uint8_t>(b)};
      const auto& lt = t[label];
      out[py::str(label.str())] = py::make_tuple(lt.nonempty, lt.connected, lt.components);
    }
    return out;
  }, py::arg("config"));

  py::class_<OracleMinimum>(m, "OracleMinimum")
      .def_readonly("point", &OracleMinimum::point)
      .def_readonly("value", &OracleMinimum::value);
  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("minima", &OracleResult::minima)
      .def_readonly("cluster_radius", &OracleResult::cluster_radius)
      .def_readonly("global_value", &OracleResult::global_value);
  m.def("brute_force_minimize",
        [](const SensorConfig& c, int resolution, int rounds) {
          py::gil_scoped_release release;
          return brute_force_minimize(c, default_grid_spec(c, resolution, rounds));
        },
        py::arg("config"), py::arg("resolution") = 512, py::arg("refine_rounds") = 6);

  m.def("objective_table", [](const SensorConfig& c) {
    py::list out;
    for (const auto& e : objective_table(c)) out.append(py::make_tuple(e.label, e.value, e.minimal));
    return out;
  }, py::arg("config"));
}
