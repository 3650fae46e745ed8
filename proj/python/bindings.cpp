#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bgls/operator.hpp"
#include "bgls/psi.hpp"
#include "bgls/quad.hpp"
#include "bgls/sharpness.hpp"

namespace py = pybind11;
using namespace bgls;

namespace {

py::dict sup_dict(const psi::SupResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["argmax"] = r.argmax;
  d["location"] = psi::to_string(r.location);
  d["stable"] = r.stable;
  d["finite"] = r.finite;
  return d;
}

sharp::ExperimentOptions options_with(double q_max) {
  sharp::ExperimentOptions o;
  o.q_max = q_max;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grand Lebesgue norms and oscillatory integral operators";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("fresnel_I", &quad::fresnel_I, py::arg("Lambda"),
        "int_0^Lambda z^{-1/2} cos z dz");
  m.def(
      "lp_norm", [](const std::string& f, double p) { return quad::lp_norm(quad::function_from_name(f), p).value; },
      py::arg("f"), py::arg("p"));
  m.def(
      "psi", [](const std::string& name, double p) { return psi::psi_from_name(name)(p); },
      py::arg("name"), py::arg("p"));
  m.def(
      "bgls_norm",
      [](const std::string& f, const std::string& weight) {
        const auto curve = sharp::lp_curve(quad::function_from_name(f));
        return sup_dict(psi::bgls_norm(curve, psi::psi_from_name(weight)));
      },
      py::arg("f"), py::arg("psi"));
  m.def(
      "fundamental_function",
      [](const std::string& weight, double delta) {
        return sup_dict(psi::fundamental_function(psi::psi_from_name(weight), delta));
      },
      py::arg("psi"), py::arg("delta"));
  m.def(
      "apply_operator",
      [](const std::string& kernel, double lambda, const std::string& f, const std::vector<double>& xs,
         int threads) {
        std::vector<Point> grid;
        for (double x : xs) grid.push_back({x, 0.0, 0.0});
        py::gil_scoped_release release;
        const auto field = op::apply_operator(op::kernel_from_name(kernel), lambda,
                                              quad::function_from_name(f), grid, {}, threads);
        return field.values;
      },
      py::arg("kernel"), py::arg("lambda_"), py::arg("f"), py::arg("x"), py::arg("threads") = 1);
  m.def(
      "w_functional",
      [](double lambda, const std::string& f, double p, const std::string& kernel) {
        py::gil_scoped_release release;
        return sharp::w_functional(op::kernel_from_name(kernel), lambda, quad::function_from_name(f), p)
            .value;
      },
      py::arg("lambda_"), py::arg("f"), py::arg("p"), py::arg("kernel") = "fourier");
  m.def(
      "z_functional",
      [](double lambda, const std::string& weight, const std::string& f, double q_max,
         const std::string& kernel) {
        py::gil_scoped_release release;
        const auto z = sharp::z_functional(op::kernel_from_name(kernel), lambda,
                                           psi::psi_from_name(weight), quad::function_from_name(f),
                                           options_with(q_max));
        return std::pair{z.value, z.numerator.argmax};
      },
      py::arg("lambda_"), py::arg("psi"), py::arg("f"), py::arg("q_max") = psi::kDefaultQMax,
      py::arg("kernel") = "fourier",
      "Returns (Z, argmax q of the numerator).");
  m.def(
      "theorem2_ratio",
      [](double lambda, const std::string& weight, const std::string& zeta, const std::string& f) {
        py::gil_scoped_release release;
        const auto r = sharp::theorem2_check(op::kernel_from_name("fourier"), lambda,
                                             psi::psi_from_name(weight), psi::psi_from_name(zeta),
                                             quad::function_from_name(f), {}, 1);
        return r.ratio;
      },
      py::arg("lambda_"), py::arg("psi"), py::arg("zeta"), py::arg("f"));
  m.def(
      "check_kernel",
      [](const std::string& kernel) {
        const auto k = op::kernel_from_name(kernel);
        const auto support = op::check_support(k);
        py::dict d;
        d["min_abs_det"] = op::check_nondegeneracy(k);
        d["support_ok"] = support.ok;
        d["violations"] = support.violations;
        return d;
      },
      py::arg("kernel"));
}
