// Python bindings for the core operations. Callables passed from Python are
// only ever invoked on the calling thread (projection and load assembly are
// sequential), so worker threads inside the contour sum never touch the
// interpreter.

#include "fracsolve/analysis.hpp"
#include "fracsolve/convolution.hpp"
#include "fracsolve/mittag_leffler.hpp"
#include "fracsolve/oracles.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fracsolve;

namespace {

ContourConfig make_config(int N, double d, double b, double hint) {
  return ContourConfig{b, d, N, hint};
}

}  // namespace

PYBIND11_MODULE(_fracsolve, m) {
  m.doc() = "space-time fractional diffusion solver core";

  m.def(
      "ml", [](double gamma, double mu, cplx z) { return ml(gamma, mu, z); }, py::arg("gamma"),
      py::arg("mu"), py::arg("z"), "two-parameter Mittag-Leffler function");
  m.def("gamma_fn", &gamma_fn, py::arg("x"));

  py::class_<FemSystem>(m, "FemSystem")
      .def_readonly("n_dofs", &FemSystem::n_dofs)
      .def_readonly("h", &FemSystem::h)
      .def_readonly("dim", &FemSystem::dim)
      .def_readonly("level", &FemSystem::level);

  m.def("build_system", &build_system, py::arg("dim"), py::arg("level"));
  m.def(
      "l2_project",
      [](const FemSystem& fs, const std::function<double(double, double)>& g) {
        return l2_project(fs, g);
      },
      py::arg("system"), py::arg("g"));
  m.def(
      "l2_norm",
      [](const FemSystem& fs, const Eigen::VectorXd& c) { return l2_norm(fs, c); },
      py::arg("system"), py::arg("coeffs"));

  m.def(
      "propagate_homogeneous",
      [](const FemSystem& fs, double gamma, double beta, double t, const Eigen::VectorXd& v,
         int N, double d, double b, double hint) {
        FracParams p{gamma, beta};
        validate_params(p);
        ContourConfig cfg = make_config(N, d, b, hint);
        py::gil_scoped_release release;
        return propagate_homogeneous(fs, p, cfg, t, v, ContourSign::minus);
      },
      py::arg("system"), py::arg("gamma"), py::arg("beta"), py::arg("t"), py::arg("v"),
      py::arg("N") = 200, py::arg("d") = 0.3926990816987241, py::arg("b") = 1.0,
      py::arg("lambda1_hint") = 9.869604401089358);

  m.def(
      "solve_nonhomogeneous",
      [](const FemSystem& fs, double gamma, double beta, double T, int calN,
         const std::function<double(double, double, double)>& f, int N, double d, double b,
         double hint) {
        FracParams p{gamma, beta};
        validate_params(p);
        ContourConfig cfg = make_config(N, d, b, hint);
        GeometricPartition part = geometric_partition(T, calN, gamma);
        return solve_nonhomogeneous(fs, p, cfg, part, f, ContourSign::minus);
      },
      py::arg("system"), py::arg("gamma"), py::arg("beta"), py::arg("T"), py::arg("calN"),
      py::arg("f"), py::arg("N") = 200, py::arg("d") = 0.3926990816987241, py::arg("b") = 1.0,
      py::arg("lambda1_hint") = 9.869604401089358);

  m.def(
      "exact_solution_1d",
      [](double t, double x, double beta, int num_terms) {
        return exact_solution_1d(t, x, beta, SpectralTruncation{num_terms});
      },
      py::arg("t"), py::arg("x"), py::arg("beta"), py::arg("num_terms") = 50000);
  m.def("discrete_spectral_1d", &discrete_spectral_1d, py::arg("system"), py::arg("t"),
        py::arg("beta"), py::arg("gamma"));
  m.def("oroc", &oroc, py::arg("errors"), py::arg("abscissae"),
        "pairwise observed rates of convergence");
}
