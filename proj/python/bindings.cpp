#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cesaro/bmoa.hpp"
#include "cesaro/cli.hpp"
#include "cesaro/errors.hpp"
#include "cesaro/operators.hpp"
#include "cesaro/report.hpp"
#include "cesaro/spectra.hpp"
#include "cesaro/symbol.hpp"
#include "cesaro/weights.hpp"

namespace py = pybind11;
using namespace cesaro;

namespace {

std::vector<cplx> coeffs(const PowerSeries& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

py::dict point_dict(const PointReport& r) {
    py::dict d;
    d["lambda"] = r.lambda;
    d["label"] = to_string(r.label);
    d["membership"] = to_string(r.membership);
    d["weight"] = to_string(r.weight);
    d["growth_exponent"] = r.growth_exponent;
    d["note"] = r.note;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectra of integration operators T_g on Hardy and Bergman spaces";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<UnsupportedSpace>(m, "UnsupportedSpace", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<SymbolSpec>(m, "Symbol")
        .def_static("zero", &SymbolSpec::zero)
        .def_static("cesaro_log", &SymbolSpec::cesaro_log)
        .def_static("polynomial", &SymbolSpec::polynomial, py::arg("coeffs"))
        .def_static("blaschke", &SymbolSpec::blaschke, py::arg("a"))
        .def_static("power_log", &SymbolSpec::power_log, py::arg("a"))
        .def_static("explicit", &SymbolSpec::explicit_coeffs, py::arg("coeffs"))
        .def("scaled", &SymbolSpec::scaled, py::arg("c"))
        .def("__add__", [](const SymbolSpec& a, const SymbolSpec& b) { return a + b; })
        .def("__call__", &SymbolSpec::value, py::arg("z"))
        .def("series", [](const SymbolSpec& s, std::size_t n) { return coeffs(symbol_series(s, n)); },
             py::arg("degree"))
        .def_property_readonly("name", &SymbolSpec::name)
        .def("__repr__", [](const SymbolSpec& s) { return "<Symbol " + s.name() + ">"; });

    py::class_<SpaceSpec>(m, "Space")
        .def_static("hardy", &SpaceSpec::hardy, py::arg("p") = 2.0)
        .def_static("bergman", &SpaceSpec::bergman, py::arg("p") = 2.0, py::arg("alpha") = 0.0)
        .def_readonly("p", &SpaceSpec::p)
        .def_readonly("alpha", &SpaceSpec::alpha)
        .def_property_readonly("is_hardy", &SpaceSpec::is_hardy)
        .def("__repr__", &SpaceSpec::describe);

    m.def("exp_series",
          [](const std::vector<cplx>& f, cplx scale, std::size_t n) {
              return coeffs(exp_series(PowerSeries(f), scale, n));
          },
          py::arg("coeffs"), py::arg("scale"), py::arg("degree"));

    m.def("resolvent_apply",
          [](const std::vector<cplx>& g, cplx lambda, const std::vector<cplx>& h, std::size_t n) {
              return coeffs(resolvent_apply(PowerSeries(g), lambda, PowerSeries(h), n));
          },
          py::arg("g"), py::arg("lam"), py::arg("h"), py::arg("degree"));

    m.def("spectral_radius_estimate",
          [](const SymbolSpec& g, const SpaceSpec& space, std::size_t n, int n_max) {
              return spectral_radius_estimate(symbol_series(g, n), space, n, n_max);
          },
          py::arg("g"), py::arg("space"), py::arg("N") = 256, py::arg("n_max") = 32);

    m.def("classify",
          [](const SymbolSpec& g, cplx lambda, const SpaceSpec& space) {
              return point_dict(classify_point(g, lambda, space));
          },
          py::arg("g"), py::arg("lam"), py::arg("space") = SpaceSpec::hardy());

    m.def("spectrum_map",
          [](const SymbolSpec& g, const SpaceSpec& space, std::array<double, 4> rect, int nx, int ny,
             unsigned threads) {
              MapGrid grid{rect[0], rect[1], rect[2], rect[3], nx, ny};
              SpectrumMap map;
              {
                  py::gil_scoped_release nogil;
                  map = spectrum_map(g, space, grid, {}, threads);
              }
              std::vector<std::string> labels;
              labels.reserve(map.cells.size());
              for (const auto& c : map.cells) labels.push_back(to_string(c.label));
              py::dict d;
              d["nx"] = nx;
              d["ny"] = ny;
              d["eps0"] = map.eps0;
              d["labels"] = labels;
              return d;
          },
          py::arg("g"), py::arg("space") = SpaceSpec::hardy(),
          py::arg("rect") = std::array<double, 4>{-0.5, 2.5, -1.5, 1.5}, py::arg("nx") = 40, py::arg("ny") = 40,
          py::arg("threads") = 1);

    m.def("a2_verdict",
          [](const std::function<double(double)>& log_w, int levels) {
              const auto tree = ArcDyadicTree::make(levels);
              std::vector<std::vector<double>> samples;
              for (int res = 0; res <= levels; ++res) {
                  const auto grid = tree.grid(res);
                  std::vector<double> v(grid.samples());
                  for (std::size_t j = 0; j < v.size(); ++j) v[j] = log_w(grid.theta(j));
                  samples.push_back(std::move(v));
              }
              return to_string(a2_characteristic(CircleWeight::from_log_levels(std::move(samples)), tree).verdict);
          },
          py::arg("log_w"), py::arg("levels") = 10);

    m.def("gj_level_log_power",
          [](double a, double tol) {
              const auto tree = ArcDyadicTree::make(10);
              const auto phi = RealBoundaryFunction::sample(
                  tree, [a](double t) { return a * std::log(std::abs(2.0 * std::sin(0.5 * t))); }, {0.0});
              return gj_level(phi, tree, tol).estimate;
          },
          py::arg("a"), py::arg("tol") = 1e-2);

    m.def("run_cli",
          [](std::vector<std::string> args) {
              args.insert(args.begin(), "cesaro");
              return run_cli(args);
          },
          py::arg("args"), py::call_guard<py::gil_scoped_release>());

    m.attr("__version__") = VERSION_INFO;
}
