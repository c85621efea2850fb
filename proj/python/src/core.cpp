#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "centrosec/centrosec.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace centrosec;

namespace {

py::dict section_dict(const SectionData& s) {
  py::dict d;
  d["measure"] = s.measure;
  d["centroid"] = s.centroid;
  d["moment"] = s.moment;
  d["method"] = to_string(s.method);
  if (s.measure_stderr) d["measure_stderr"] = *s.measure_stderr;
  if (s.centroid_stderr) d["centroid_stderr"] = *s.centroid_stderr;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Critical supporting hyperplanes of symmetric convex bodies";

  py::register_exception<RejectedInstance>(m, "RejectedInstance", PyExc_ValueError);
  py::register_exception<UnsupportedRepresentation>(m, "UnsupportedRepresentation", PyExc_TypeError);
  py::register_exception<DegenerateSection>(m, "DegenerateSection", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<ConvexBody>(m, "ConvexBody")
      .def_static("ball", &ConvexBody::ball, "dim"_a, "radius"_a)
      .def_static("ellipsoid", &ConvexBody::ellipsoid, "shape"_a)
      .def_static("ellipsoid_from_axes",
                  py::overload_cast<const Vec&, const Mat&>(&ConvexBody::ellipsoid_from_axes), "semiaxes"_a,
                  "rotation"_a)
      .def_static("ellipsoid_from_axes", py::overload_cast<const Vec&>(&ConvexBody::ellipsoid_from_axes),
                  "semiaxes"_a)
      .def_static("lp_ball", &ConvexBody::lp_ball, "dim"_a, "p"_a, "scale"_a = 1.0)
      .def_static("h_polytope", &ConvexBody::h_polytope, "normals"_a, "offsets"_a)
      .def_static("v_polytope", &ConvexBody::v_polytope, "points"_a)
      .def_static("cube", &ConvexBody::cube, "dim"_a, "half_width"_a = 1.0)
      .def_property_readonly("dim", &ConvexBody::dim)
      .def_property_readonly("kind", [](const ConvexBody& b) { return to_string(b.kind()); })
      .def_property_readonly("strictly_convex", &ConvexBody::strictly_convex)
      .def("support", &ConvexBody::support, "u"_a)
      .def("touch_point", &ConvexBody::touch_point, "u"_a)
      .def("gauge", &ConvexBody::gauge, "y"_a)
      .def("contains", &ConvexBody::contains, "y"_a, "tol"_a = 1e-12)
      .def("volume", &ConvexBody::volume)
      .def("inradius", &ConvexBody::inradius)
      .def("circumradius", &ConvexBody::circumradius)
      .def("scaled", &ConvexBody::scaled, "factor"_a)
      .def_property_readonly("vertices",
                             [](const ConvexBody& b) -> py::object {
                               if (!b.is_polytope()) return py::none();
                               return py::cast(b.polytope().vertices);
                             })
      .def("__repr__", [](const ConvexBody& b) {
        return "<ConvexBody " + to_string(b.kind()) + " n=" + std::to_string(b.dim()) + ">";
      });

  m.def(
      "cap_volume", [](const ConvexBody& K, const Vec& x, double t) { return cap_volume(K, Hyperplane(x, t)); },
      "K"_a, "x"_a, "t"_a, "vol{y in K : <y, x> >= t} for unit x");
  m.def(
      "section", [](const ConvexBody& K, const Vec& x, double t) { return section_dict(section(K, Hyperplane(x, t))); },
      "K"_a, "x"_a, "t"_a, "Measure, moment and centroid of K ∩ {<y, x> = t}");
  m.def(
      "mc_section",
      [](const ConvexBody& K, const Vec& x, double t, std::int64_t samples, double thickness, std::uint64_t seed) {
        return section_dict(mc_section(K, Hyperplane(x, t), samples, thickness, seed));
      },
      "K"_a, "x"_a, "t"_a, "samples"_a = kDefaultMcSamples, "thickness"_a, "seed"_a = 0);

  m.def(
      "evaluate",
      [](const ConvexBody& K, const ConvexBody& L, const Vec& z) {
        const FunctionalEval e = CapFunctional(K, L).evaluate(z);
        py::dict d;
        d["direction"] = e.direction;
        d["f"] = e.f_value;
        d["gradient"] = e.tangential_gradient;
        d["residual"] = e.residual;
        d["touch_point"] = e.touch_point;
        d["section"] = section_dict(e.section);
        return d;
      },
      "K"_a, "L"_a, "z"_a, "Cap functional, its tangential gradient and the critical residual at z");
  m.def(
      "fd_gradient",
      [](const ConvexBody& K, const ConvexBody& L, const Vec& z, double step) {
        return fd_tangential_gradient(K, L, z, step);
      },
      "K"_a, "L"_a, "z"_a, "step"_a = 1e-5);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("starts", &SolverConfig::starts)
      .def_readwrite("max_iters", &SolverConfig::max_iters)
      .def_readwrite("step_init", &SolverConfig::step_init)
      .def_readwrite("residual_tol", &SolverConfig::residual_tol)
      .def_readwrite("dedup_angle", &SolverConfig::dedup_angle)
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("threads", &SolverConfig::threads)
      .def_property(
          "mode", [](const SolverConfig& c) { return to_string(c.mode); },
          [](SolverConfig& c, const std::string& s) { c.mode = parse_search_mode(s); });

  py::class_<CriticalPair>(m, "CriticalPair")
      .def_readonly("direction", &CriticalPair::direction)
      .def_readonly("f", &CriticalPair::f_value)
      .def_readonly("residual", &CriticalPair::residual)
      .def_readonly("centroid", &CriticalPair::centroid)
      .def_readonly("touch_point", &CriticalPair::touch_point)
      .def_property_readonly("kind", [](const CriticalPair& p) { return to_string(p.kind); })
      .def_readonly("basin_count", &CriticalPair::basin_count)
      .def_readonly("gauge_error", &CriticalPair::gauge_error);

  py::class_<TheoremReport>(m, "Report")
      .def_readonly("pairs", &TheoremReport::pairs)
      .def_readonly("certified", &TheoremReport::certified)
      .def_readonly("budget_exhausted", &TheoremReport::budget_exhausted)
      .def_readonly("continuum", &TheoremReport::continuum)
      .def_readonly("justification", &TheoremReport::justification)
      .def_property_readonly("dim", &TheoremReport::dim)
      .def("to_json", &report_json_string)
      .def("to_svg", &report_svg);

  m.def("solve", &solve, "K"_a, "L"_a, "config"_a = SolverConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def(
      "grid_census",
      [](const ConvexBody& K, const ConvexBody& L, int resolution, double residual_tol) {
        std::vector<std::pair<Vec, double>> out;
        for (const auto& g : grid_census(K, L, resolution, residual_tol)) out.emplace_back(g.direction, g.residual);
        return out;
      },
      "K"_a, "L"_a, "resolution"_a = 10000, "residual_tol"_a = 1e-7, py::call_guard<py::gil_scoped_release>());

  m.def(
      "generate_instance",
      [](const std::string& family, int dim, std::uint64_t seed) {
        Instance inst = generate_instance(parse_family(family), dim, seed);
        return py::make_tuple(inst.K, inst.L);
      },
      "family"_a, "dim"_a, "seed"_a);

  m.def(
      "parse_instance",
      [](const std::string& text) {
        const InstanceSpec s = parse_instance_string(text);
        py::dict d;
        d["dimension"] = s.dimension;
        d["seed"] = s.seed;
        d["K"] = s.K ? py::cast(*s.K) : py::none();
        d["L"] = s.L ? py::cast(*s.L) : py::none();
        d["config"] = s.solver;
        return d;
      },
      "text"_a);

  m.attr("REPORT_SCHEMA") = kReportSchema;
}
