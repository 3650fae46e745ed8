#include "bgls/sharpness.hpp"

#include <algorithm>
#include <cmath>

namespace bgls::sharp {

namespace {

using psi::PsiFunction;
using quad::FunctionSpec;

double relative_change(double base, double other) {
  if (std::isnan(base) || std::isnan(other)) return kNaN;
  if (base == other) return 0.0;
  return std::abs(other - base) / std::abs(base);
}

double finite_max(double a, double b) {
  if (std::isnan(a)) return b;
  if (std::isnan(b)) return a;
  return std::max(a, b);
}

double finite_min(double a, double b) {
  if (std::isnan(a)) return b;
  if (std::isnan(b)) return a;
  return std::min(a, b);
}

struct SweepRequest {
  std::string label;
  const PsiFunction* psi = nullptr;  // Z is computed when set
  bool want_w = false;
};

SweepReport run_sweep(const op::PhaseAmplitudeKernel& kernel, const std::vector<double>& lambdas,
                      const FunctionSpec& f, const std::vector<double>& p_grid,
                      const ExperimentOptions& options, const SweepRequest& request) {
  require(!lambdas.empty(), "scan needs a nonempty lambda grid");
  require(!request.want_w || !p_grid.empty(), "scan needs a nonempty p grid");
  SweepReport report;
  report.label = request.label;
  report.lambda_grid = lambdas;
  if (request.want_w) report.p_grid = p_grid;

  for (double lambda : lambdas) {
    OperatorExperiment experiment(kernel, lambda, f, options);
    if (request.want_w) {
      std::vector<double> row;
      std::vector<char> row_ok;
      for (double p : p_grid) {
        const auto w = w_functional(experiment, p);
        const bool ok = w.converged && std::isfinite(w.value);
        row.push_back(w.value);
        row_ok.push_back(ok ? 1 : 0);
        if (ok) {
          if (request.psi == nullptr) report.empirical_sup = finite_max(report.empirical_sup, w.value);
          report.empirical_inf_w = finite_min(report.empirical_inf_w, w.value);
        } else {
          ++report.excluded_cells;
        }
      }
      report.w.push_back(std::move(row));
      report.w_converged.push_back(std::move(row_ok));
    }
    if (request.psi != nullptr) {
      const auto z = z_functional(experiment, *request.psi);
      const bool ok = z.converged && std::isfinite(z.value);
      report.z.push_back(z.value);
      report.z_argmax_q.push_back(z.numerator.argmax);
      report.z_converged.push_back(ok ? 1 : 0);
      if (ok) {
        report.empirical_sup = finite_max(report.empirical_sup, z.value);
        report.empirical_inf_z = finite_min(report.empirical_inf_z, z.value);
      } else {
        ++report.excluded_cells;
      }
    }
    if (kernel.dimension == 1) report.decay_floor.push_back(decay_floor(experiment));
  }
  return report;
}

void attach_refinement(SweepReport& base, const SweepReport& refined) {
  base.sup_delta = relative_change(base.empirical_sup, refined.empirical_sup);
  base.inf_w_delta = relative_change(base.empirical_inf_w, refined.empirical_inf_w);
  base.inf_z_delta = relative_change(base.empirical_inf_z, refined.empirical_inf_z);
  base.refinement_delta = finite_max(finite_max(base.sup_delta, base.inf_w_delta), base.inf_z_delta);
  base.excluded_cells += refined.excluded_cells;
}

}  // namespace

ExperimentOptions ExperimentOptions::refined(int factor) const {
  require(factor >= 1, "refinement factor must be >= 1");
  ExperimentOptions out = *this;
  out.sup = sup.refined(factor);
  out.field.panels_per_period *= factor;
  out.refine *= factor;
  return out;
}

Witness make_witness() { return {quad::witness_f0(), psi::psi0()}; }

psi::LpCurve lp_curve(const FunctionSpec& f, const quad::Tolerance& tol, bool closed_form) {
  psi::LpCurve curve;
  const bool singular = f.singularity == quad::Singularity::inv_sqrt_at_origin;
  curve.a = 1.0;
  curve.b = singular ? 2.0 : psi::kInfinity;
  if (closed_form && f.closed_form_lp) {
    curve.provenance = psi::LpCurve::Provenance::closed_form;
    curve.eval = f.closed_form_lp;
    return curve;
  }
  curve.provenance = psi::LpCurve::Provenance::quadrature;
  curve.tolerance = tol.rel;
  curve.eval = [f, tol, singular](double p) {
    if (singular && p >= 2.0) return psi::kInfinity;
    return quad::lp_norm(f, p, tol).value;
  };
  return curve;
}

// ---------------------------------------------------------------------------
// OperatorExperiment

OperatorExperiment::OperatorExperiment(op::PhaseAmplitudeKernel kernel, double lambda,
                                       FunctionSpec f, ExperimentOptions options)
    : kernel_(std::move(kernel)), lambda_(lambda), f_(std::move(f)), options_(std::move(options)) {
  require(lambda_ >= 1.0, "experiments require lambda >= 1");
  require(f_.dimension == kernel_.dimension, "function and kernel dimensions differ");
}

const op::FieldModel& OperatorExperiment::field() {
  if (!field_) {
    const auto domain = options_.x_domain.value_or(
        std::pair{-kernel_.x_half_width, kernel_.x_half_width});
    field_ = op::sample_field(kernel_, lambda_, f_, domain, options_.tol, options_.field);
    converged_ = converged_ && field_->converged();
  }
  return *field_;
}

quad::QuadResult<double> OperatorExperiment::lq(double q) {
  if (kernel_.dimension > 1) {
    auto res = op::lq_norm_direct(kernel_, lambda_, f_, q, options_.tol);
    converged_ = converged_ && res.converged;
    return res;
  }
  const auto& u = field();
  return lq(q, {u.lo(), u.hi()});
}

quad::QuadResult<double> OperatorExperiment::lq(double q, std::pair<double, double> domain) {
  auto res = op::field_lq_norm(field(), q, domain, options_.tol);
  converged_ = converged_ && res.converged;
  return res;
}

psi::LpCurve OperatorExperiment::u_curve() {
  psi::LpCurve curve;
  curve.a = 1.0;
  curve.b = psi::kInfinity;
  curve.provenance = psi::LpCurve::Provenance::quadrature;
  curve.tolerance = options_.tol.rel;
  curve.eval = [this](double q) { return lq(q).value; };
  return curve;
}

psi::LpCurve OperatorExperiment::f_curve() const {
  return lp_curve(f_, options_.tol, options_.closed_form_lp);
}

// ---------------------------------------------------------------------------
// Functionals

WResult w_functional(OperatorExperiment& experiment, double p) {
  require(p > 1.0 && p <= 2.0, "W requires p in (1, 2]");
  require(!experiment.f().identically_zero, "W is undefined for f = 0");
  WResult out;
  out.p = p;
  out.q = psi::conjugate_exponent(p);
  const auto u = experiment.lq(out.q);
  out.u_norm = u.value;
  out.f_norm = experiment.f_curve()(p);
  require(out.f_norm > 0.0, "W is undefined for f = 0");
  out.value = u.value * std::pow(experiment.lambda(), experiment.dimension() / out.q) / out.f_norm;
  out.converged = u.converged && experiment.converged();
  return out;
}

WResult w_functional(const op::PhaseAmplitudeKernel& kernel, double lambda, const FunctionSpec& f,
                     double p, const ExperimentOptions& options) {
  OperatorExperiment experiment(kernel, lambda, f, options);
  return w_functional(experiment, p);
}

ZResult z_functional(OperatorExperiment& experiment, const PsiFunction& psi) {
  ZResult out;
  out.denominator = psi::bgls_norm(experiment.f_curve(), psi, experiment.options().sup);
  require(out.denominator.finite && out.denominator.value > 0.0,
          "Z requires 0 < ||f||G(psi) < infinity");
  const auto weight = psi::transform_psi_lambda(psi, experiment.lambda(), experiment.dimension(),
                                                experiment.options().q_max);
  out.numerator = psi::bgls_norm(experiment.u_curve(), weight, experiment.options().sup);
  out.value = out.numerator.value / out.denominator.value;
  out.converged = experiment.converged() && out.numerator.finite;
  return out;
}

ZResult z_functional(const op::PhaseAmplitudeKernel& kernel, double lambda, const PsiFunction& psi,
                     const FunctionSpec& f, const ExperimentOptions& options) {
  OperatorExperiment experiment(kernel, lambda, f, options);
  return z_functional(experiment, psi);
}

std::vector<double> doubled_grid(const std::vector<double>& grid) {
  std::vector<double> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0) out.push_back(0.5 * (grid[i - 1] + grid[i]));
    out.push_back(grid[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scans

std::vector<SweepReport> theorem1_scan(const op::PhaseAmplitudeKernel& kernel,
                                       const std::vector<double>& lambda_grid,
                                       const std::vector<ScanCase>& cases,
                                       const std::vector<double>& p_grid,
                                       const ExperimentOptions& options, int refinement_factor) {
  require(!cases.empty(), "theorem1_scan needs at least one (psi, f) case");
  std::vector<SweepReport> reports;
  for (const auto& c : cases) {
    SweepRequest request{"theorem1: " + c.psi.name() + " / " + c.f.name, &c.psi,
                         !p_grid.empty()};
    auto report = run_sweep(kernel, lambda_grid, c.f, p_grid, options, request);
    if (refinement_factor > 1) {
      const auto refined =
          run_sweep(kernel, lambda_grid, c.f, doubled_grid(p_grid), options.refined(refinement_factor), request);
      attach_refinement(report, refined);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

Theorem2Result theorem2_check(const op::PhaseAmplitudeKernel& kernel, double lambda,
                              const PsiFunction& psi, const PsiFunction& zeta,
                              const FunctionSpec& f, const ExperimentOptions& options,
                              int refinement_factor) {
  auto compute = [&](const ExperimentOptions& opts) {
    OperatorExperiment experiment(kernel, lambda, f, opts);
    const auto product = psi::psi_product(psi, zeta, opts.q_max);
    const double scale = std::pow(lambda, kernel.dimension);
    Theorem2Result r;
    r.lambda = lambda;
    const auto u_norm = psi::bgls_norm(experiment.u_curve(), product.nu_star, opts.sup);
    const auto f_norm = psi::bgls_norm(experiment.f_curve(), psi, opts.sup);
    const auto phi = psi::fundamental_function(zeta, scale, opts.sup);
    r.u_norm = u_norm.value;
    r.f_norm = f_norm.value;
    r.fundamental = phi.value;
    r.lhs = scale * u_norm.value;
    r.rhs = phi.value * f_norm.value;
    r.ratio = r.lhs / r.rhs;
    r.converged = experiment.converged() && u_norm.finite && f_norm.finite;
    return r;
  };
  auto result = compute(options);
  if (refinement_factor > 1) {
    const auto refined = compute(options.refined(refinement_factor));
    result.refined_ratio = refined.ratio;
    result.refinement_delta = relative_change(result.ratio, refined.ratio);
    result.converged = result.converged && refined.converged;
  }
  return result;
}

LowerBoundScan theorem3_scan(const op::PhaseAmplitudeKernel& kernel,
                             const std::vector<double>& lambda_grid,
                             const std::vector<double>& p_grid, const ExperimentOptions& options,
                             double floor, int refinement_factor) {
  const auto witness = make_witness();
  SweepRequest request{"theorem3: W(lambda, f0, p)", nullptr, true};
  LowerBoundScan out;
  out.report = run_sweep(kernel, lambda_grid, witness.f0, p_grid, options, request);
  if (refinement_factor > 1) {
    const auto refined = run_sweep(kernel, lambda_grid, witness.f0, doubled_grid(p_grid),
                                   options.refined(refinement_factor), request);
    attach_refinement(out.report, refined);
    // Only the infimum is gated; added p-points may legitimately raise the sup.
    out.report.refinement_delta = out.report.inf_w_delta;
  }
  out.infimum = out.report.empirical_inf_w;
  out.floor = floor;
  out.above_floor = std::isfinite(out.infimum) && out.infimum > floor;
  return out;
}

LowerBoundScan theorem4_scan(const op::PhaseAmplitudeKernel& kernel,
                             const std::vector<double>& lambda_grid,
                             const ExperimentOptions& options, double floor,
                             int refinement_factor) {
  const auto witness = make_witness();
  SweepRequest request{"theorem4: Z(lambda, psi0, f0)", &witness.psi0, false};
  LowerBoundScan out;
  out.report = run_sweep(kernel, lambda_grid, witness.f0, {}, options, request);
  if (refinement_factor > 1) {
    const auto refined =
        run_sweep(kernel, lambda_grid, witness.f0, {}, options.refined(refinement_factor), request);
    attach_refinement(out.report, refined);
    out.report.refinement_delta = out.report.inf_z_delta;
  }
  out.infimum = out.report.empirical_inf_z;
  out.floor = floor;
  out.above_floor = std::isfinite(out.infimum) && out.infimum > floor;
  return out;
}

// ---------------------------------------------------------------------------
// Lower-bound building blocks

double lower_bound_factor(double p) {
  require(p > 1.0 && p < 2.0, "lower_bound_factor requires p in (1, 2)");
  const double q = psi::conjugate_exponent(p);
  return std::pow(2.0 - p, 1.0 / p) / std::pow(q - 2.0, 1.0 / q);
}

double lower_bound_factor_simplified(double p) {
  require(p > 1.0 && p < 2.0, "lower_bound_factor requires p in (1, 2)");
  return std::pow(2.0 - p, 2.0 / p - 1.0) * std::pow(p - 1.0, 1.0 - 1.0 / p);
}

double quoted_closed_form(double p) {
  require(p > 1.0 && p < 2.0, "quoted_closed_form requires p in (1, 2)");
  return std::pow(p - 1.0, 1.0 / p - 1.0);
}

double decay_floor(OperatorExperiment& experiment, double x_max) {
  const double lambda = experiment.lambda();
  const auto& samples = experiment.field().samples();
  double floor = kNaN;
  for (std::size_t i = 0; i < samples.x.size(); ++i) {
    const double x = samples.x[i][0];
    if (x < 1.0 / lambda || x > x_max) continue;
    floor = finite_min(floor, std::abs(samples.values[i]) * std::sqrt(lambda * x));
  }
  return floor;
}

double scaled_lr_norm(OperatorExperiment& experiment, double r) {
  require(r > 2.0, "scaled_lr_norm requires r > 2");
  const double norm = experiment.lq(r).value;
  return norm * std::pow(experiment.lambda(), experiment.dimension() / r) *
         std::pow(r - 2.0, 1.0 / r);
}

}  // namespace bgls::sharp
