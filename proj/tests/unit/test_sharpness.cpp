#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../oracles/oracles.hpp"
#include "bgls/sharpness.hpp"
#include "generators.hpp"

using namespace bgls;
using namespace bgls::sharp;

namespace {

const op::PhaseAmplitudeKernel& kernel() {
  static const auto k = op::fourier_kernel();
  return k;
}

}  // namespace

TEST_CASE("witness Lp curve equals psi0") {
  const auto w = make_witness();
  const auto curve = lp_curve(w.f0);
  for (int k = 1; k <= 99; ++k) {
    const double p = 1.0 + 0.01 * k;
    CAPTURE(p);
    CHECK(gen::rel_diff(curve(p), w.psi0(p)) < 1e-6);
  }
  CHECK(std::isinf(curve(2.0)));
}

TEST_CASE("W(4, f0, 1.5) against the brute-force oracle") {
  const auto grid = oracle::f0_field(4.0, 1000, 1000);
  const double expected = oracle::w_f0(grid, 1.5);
  const auto w = w_functional(kernel(), 4.0, quad::witness_f0(), 1.5);
  CHECK(w.converged);
  CHECK(w.q == doctest::Approx(3.0));
  CHECK(gen::rel_diff(w.value, expected) < 1e-3);
  // The oracle is far more accurate than the pinned tolerance.
  CHECK(gen::rel_diff(w.value, expected) < 1e-8);
}

TEST_CASE("property: W is invariant under scaling f") {
  gen::Source src(41);
  const std::vector<std::string> names{"f0", "one", "tent"};
  for (int i = 0; i < 8; ++i) {
    const auto f = quad::function_from_name(src.pick(names));
    const double lambda = src.log_uniform(1.0, 256.0);
    const double p = src.uniform(1.1, 1.95);
    const double c = src.log_uniform(1e-3, 1e3);
    CAPTURE(f.name);
    CAPTURE(lambda);
    CAPTURE(p);
    CAPTURE(c);
    const double base = w_functional(kernel(), lambda, f, p).value;
    CHECK(gen::rel_diff(w_functional(kernel(), lambda, f.scaled(c), p).value, base) < 1e-9);
  }
}

TEST_CASE("property: Z is invariant under scaling psi or f") {
  gen::Source src(42);
  const auto w = make_witness();
  for (int i = 0; i < 4; ++i) {
    const double lambda = src.log_uniform(2.0, 64.0);
    const double c = src.log_uniform(1e-2, 1e2);
    CAPTURE(lambda);
    CAPTURE(c);
    const double base = z_functional(kernel(), lambda, w.psi0, w.f0).value;
    CHECK(gen::rel_diff(z_functional(kernel(), lambda, w.psi0.scaled(c), w.f0).value, base) < 1e-9);
    CHECK(gen::rel_diff(z_functional(kernel(), lambda, w.psi0, w.f0.scaled(c)).value, base) < 1e-9);
  }
}

TEST_CASE("Z(16, psi0, f0) is finite, positive and grid-stable") {
  const auto w = make_witness();
  const auto base = z_functional(kernel(), 16.0, w.psi0, w.f0);
  const auto fine = z_functional(kernel(), 16.0, w.psi0, w.f0, ExperimentOptions{}.refined(2));
  CHECK(std::isfinite(base.value));
  CHECK(base.value > 0.0);
  CHECK(base.converged);
  CHECK(gen::rel_diff(base.value, fine.value) < 1e-2);
  CHECK(base.numerator.argmax > 2.0);
}

TEST_CASE("Z at lambda = 1 is a plain norm ratio") {
  const auto w = make_witness();
  OperatorExperiment e(kernel(), 1.0, w.f0);
  const auto z = z_functional(e, w.psi0);
  const double q_max = ExperimentOptions{}.q_max;
  const auto direct = psi::supremum(
      [&](double q) { return e.lq(q).value / w.psi0(q / (q - 1.0)); }, 2.0, q_max);
  CHECK(gen::rel_diff(z.value, direct.value) < 1e-9);
}

TEST_CASE("Z is finite for the unit function and unit weight") {
  for (double lambda : {4.0, 64.0}) {
    const auto z = z_functional(kernel(), lambda, psi::psi_one(), quad::constant_one(1));
    CAPTURE(lambda);
    CHECK(std::isfinite(z.value));
    CHECK(z.value > 0.0);
  }
  CHECK_THROWS_AS(z_functional(kernel(), 4.0, psi::psi0(), quad::zero_function(1)), DomainError);
  CHECK_THROWS_AS(w_functional(kernel(), 4.0, quad::zero_function(1), 1.5), DomainError);
}

TEST_CASE("theorem 1 scan sandwiches every entry") {
  const auto w = make_witness();
  const auto reports = theorem1_scan(kernel(), {4.0, 16.0}, {{w.psi0, w.f0}}, {1.25, 1.75, 1.95});
  REQUIRE(reports.size() == 1);
  const auto& r = reports.front();
  CHECK(r.all_converged());
  CHECK(r.refinement_delta < 0.05);
  for (std::size_t i = 0; i < r.lambda_grid.size(); ++i) {
    CHECK(r.z[i] >= r.empirical_inf_z);
    CHECK(r.z[i] <= r.empirical_sup);
    for (double v : r.w[i]) {
      CHECK(v > 0.0);
      CHECK(v >= r.empirical_inf_w);
    }
  }
}

TEST_CASE("theorem 1 scan without refinement leaves the delta unset") {
  const auto w = make_witness();
  const auto reports = theorem1_scan(kernel(), {4.0}, {{w.psi0, w.f0}}, {1.5}, {}, 1);
  CHECK(std::isnan(reports.front().refinement_delta));
}

TEST_CASE("doubled grids insert midpoints") {
  const auto g = doubled_grid({1.0, 2.0, 4.0});
  REQUIRE(g.size() == 5);
  CHECK(g[1] == 1.5);
  CHECK(g[3] == 3.0);
}

TEST_CASE("theorem 2 with the unit zeta weight") {
  for (double lambda : {4.0, 64.0}) {
    const auto phi = psi::fundamental_function(psi::psi_one(), lambda);
    CHECK(gen::rel_diff(phi.value, lambda) < 1e-3);
  }
  const auto r = theorem2_check(kernel(), 4.0, psi::psi0(), psi::psi_lower_power(0.5), quad::witness_f0());
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio > 0.0);
  CHECK(r.refinement_delta < 0.05);
  CHECK(r.lhs == doctest::Approx(4.0 * r.u_norm));
  CHECK(r.rhs == doctest::Approx(r.fundamental * r.f_norm));
}

TEST_CASE("theorem 2 at lambda = 1 drops the lambda weights") {
  const auto r = theorem2_check(kernel(), 1.0, psi::psi0(), psi::psi_lower_power(0.5), quad::witness_f0(), {}, 1);
  CHECK(r.lhs == r.u_norm);
  CHECK(r.fundamental == doctest::Approx(psi::fundamental_function(psi::psi_lower_power(0.5), 1.0).value));
}

TEST_CASE("lower-bound factor: simplified form is an identity, the quoted form is not") {
  gen::Source src(43);
  for (int i = 0; i < 100; ++i) {
    const double p = src.uniform(1.001, 1.999);
    CAPTURE(p);
    CHECK(gen::rel_diff(lower_bound_factor(p), lower_bound_factor_simplified(p)) < 1e-12);
  }
  for (double p : {1.25, 1.5, 1.75}) {
    CAPTURE(p);
    CHECK(gen::rel_diff(lower_bound_factor(p), quoted_closed_form(p)) > 0.1);
    CHECK(quoted_closed_form(p) > 1.0);
  }
  double grid_min = 1e300;
  for (int k = 1; k < 10000; ++k) grid_min = std::min(grid_min, lower_bound_factor(1.0 + k * 1e-4));
  CHECK(grid_min > 0.3);
  CHECK(grid_min <= 1.0);
}

TEST_CASE("Stein scaling: W varies by less than a factor 4 across lambda") {
  for (double p : {1.5, 1.9}) {
    std::vector<double> values;
    for (double lambda : {16.0, 64.0, 256.0, 1024.0}) {
      values.push_back(w_functional(kernel(), lambda, quad::witness_f0(), p).value);
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    CAPTURE(p);
    CHECK(*hi / *lo < 4.0);
  }
}

TEST_CASE("decay floor and scaled Lr norms") {
  for (double lambda : {16.0, 256.0}) {
    OperatorExperiment e(kernel(), lambda, quad::witness_f0());
    const double floor = decay_floor(e);
    CAPTURE(lambda);
    CHECK(floor > 0.1);
    CHECK(floor < 4.0);
    for (double r : {3.0, 4.0, 6.0}) {
      const double scaled = scaled_lr_norm(e, r);
      CAPTURE(r);
      CHECK(scaled > 0.0);
      CHECK(scaled < 16.0);
    }
  }
}

TEST_CASE("x-domain option restricts the norms") {
  ExperimentOptions options;
  options.x_domain = std::pair{1.0 / 64.0, 1.0};
  OperatorExperiment part(kernel(), 64.0, quad::witness_f0(), options);
  OperatorExperiment full(kernel(), 64.0, quad::witness_f0());
  CHECK(part.lq(3.0).value < full.lq(3.0).value);
}

TEST_CASE("lower-bound refinement gates the infimum, not the sup") {
  const auto scan = theorem3_scan(kernel(), {64.0, 300.0}, {1.5, 1.9});
  CHECK(scan.report.sup_delta > 0.05);
  CHECK(scan.report.refinement_delta < 1e-9);
  CHECK(scan.report.refinement_delta == scan.report.inf_w_delta);
}
