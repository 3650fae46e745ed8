#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgls/operator.hpp"
#include "bgls/psi.hpp"
#include "bgls/quad.hpp"

namespace bgls::sharp {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct ExperimentOptions {
  quad::Tolerance tol;
  op::FieldOptions field;
  psi::SupOptions sup;
  double q_max = psi::kDefaultQMax;
  /// Grid density multiplier; 2 doubles the q-search grid and the initial
  /// x-panels (p-grids are doubled by the scans themselves).
  int refine = 1;
  /// Integration interval for |T_lambda f|_q; empty means the kernel's x-box.
  std::optional<std::pair<double, double>> x_domain;
  /// Use closed-form Lp curves for f when available instead of quadrature.
  bool closed_form_lp = false;

  ExperimentOptions refined(int factor) const;
};

/// The witness pair: f0(y) = |y|^{-1/2} on (0,1] mirrored, psi0(p) = (4/(2-p))^{1/p}.
struct Witness {
  quad::FunctionSpec f0;
  psi::PsiFunction psi0;
};
Witness make_witness();

/// Lp curve of f: closed form when requested and available, else quadrature.
/// Exponents where |f|_p diverges map to +infinity.
psi::LpCurve lp_curve(const quad::FunctionSpec& f, const quad::Tolerance& tol = {},
                      bool closed_form = false);

/// Shares one sampled field of u = T_lambda f between the W/Z/Theorem 2
/// computations at a fixed lambda.
class OperatorExperiment {
 public:
  OperatorExperiment(op::PhaseAmplitudeKernel kernel, double lambda, quad::FunctionSpec f,
                     ExperimentOptions options = {});

  double lambda() const { return lambda_; }
  int dimension() const { return kernel_.dimension; }
  const quad::FunctionSpec& f() const { return f_; }
  const op::PhaseAmplitudeKernel& kernel() const { return kernel_; }
  const ExperimentOptions& options() const { return options_; }

  const op::FieldModel& field();
  /// |u|_q over the configured x-domain.
  quad::QuadResult<double> lq(double q);
  quad::QuadResult<double> lq(double q, std::pair<double, double> domain);
  /// q -> |u|_q on [1, inf); non-converged evaluations clear `converged()`.
  psi::LpCurve u_curve();
  psi::LpCurve f_curve() const;
  bool converged() const { return converged_; }

 private:
  op::PhaseAmplitudeKernel kernel_;
  double lambda_;
  quad::FunctionSpec f_;
  ExperimentOptions options_;
  std::optional<op::FieldModel> field_;
  bool converged_ = true;
};

struct WResult {
  double value = kNaN;
  double p = kNaN;
  double q = kNaN;
  double u_norm = kNaN;
  double f_norm = kNaN;
  bool converged = true;
};

/// W = |T_lambda f|_q lambda^{d/q} / |f|_p with q = p/(p-1).
WResult w_functional(OperatorExperiment& experiment, double p);
WResult w_functional(const op::PhaseAmplitudeKernel& kernel, double lambda,
                     const quad::FunctionSpec& f, double p, const ExperimentOptions& options = {});

struct ZResult {
  double value = kNaN;
  psi::SupResult numerator;
  psi::SupResult denominator;
  bool converged = true;
};

/// Z = ||T_lambda f||G(psi^{(lambda)}) / ||f||G(psi).
ZResult z_functional(OperatorExperiment& experiment, const psi::PsiFunction& psi);
ZResult z_functional(const op::PhaseAmplitudeKernel& kernel, double lambda,
                     const psi::PsiFunction& psi, const quad::FunctionSpec& f,
                     const ExperimentOptions& options = {});

struct SweepReport {
  std::string label;
  std::vector<double> lambda_grid;
  std::vector<double> p_grid;
  /// w[i][j] = W(lambda_i, f, p_j); empty when W was not part of the scan.
  std::vector<std::vector<double>> w;
  std::vector<std::vector<char>> w_converged;
  /// z[i] = Z(lambda_i, psi, f); empty when Z was not part of the scan.
  std::vector<double> z;
  std::vector<double> z_argmax_q;
  std::vector<char> z_converged;
  /// min over [1/lambda, 1] of |u(x)| (lambda x)^{1/2}, one per lambda.
  std::vector<double> decay_floor;

  /// Max Z when Z is scanned, else max W.
  double empirical_sup = kNaN;
  double empirical_inf_w = kNaN;
  double empirical_inf_z = kNaN;
  /// Largest relative change of the summary constants under grid doubling;
  /// lower-bound scans count only their infimum.
  double refinement_delta = kNaN;
  double sup_delta = kNaN;
  double inf_w_delta = kNaN;
  double inf_z_delta = kNaN;
  std::size_t excluded_cells = 0;

  bool all_converged() const { return excluded_cells == 0; }
};

/// Inserts midpoints between consecutive grid values.
std::vector<double> doubled_grid(const std::vector<double>& grid);

inline const std::vector<double> kDefaultLambdaGrid{2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
inline const std::vector<double> kDefaultPGrid{1.1, 1.25, 1.5, 1.75, 1.9, 1.95, 1.99};

struct ScanCase {
  psi::PsiFunction psi;
  quad::FunctionSpec f;
};

/// Z over lambda and W over lambda x p for every (psi, f) case, plus the
/// rerun refined by `refinement_factor` when it exceeds 1.
std::vector<SweepReport> theorem1_scan(const op::PhaseAmplitudeKernel& kernel,
                                       const std::vector<double>& lambda_grid,
                                       const std::vector<ScanCase>& cases,
                                       const std::vector<double>& p_grid,
                                       const ExperimentOptions& options = {},
                                       int refinement_factor = 2);

struct Theorem2Result {
  double lambda = kNaN;
  double lhs = kNaN;  // lambda^d ||u||G(nu*)
  double rhs = kNaN;  // phi(G(zeta), lambda^d) ||f||G(psi)
  double ratio = kNaN;
  double fundamental = kNaN;
  double u_norm = kNaN;
  double f_norm = kNaN;
  double refined_ratio = kNaN;
  double refinement_delta = kNaN;
  bool converged = true;
};

Theorem2Result theorem2_check(const op::PhaseAmplitudeKernel& kernel, double lambda,
                              const psi::PsiFunction& psi, const psi::PsiFunction& zeta,
                              const quad::FunctionSpec& f, const ExperimentOptions& options = {},
                              int refinement_factor = 2);

struct LowerBoundScan {
  double infimum = kNaN;
  double floor = kNaN;
  bool above_floor = false;
  SweepReport report;
};

/// W(lambda, f0, p) over the grid; infimum compared against `floor`.
LowerBoundScan theorem3_scan(const op::PhaseAmplitudeKernel& kernel,
                             const std::vector<double>& lambda_grid,
                             const std::vector<double>& p_grid,
                             const ExperimentOptions& options = {}, double floor = 0.05,
                             int refinement_factor = 2);

/// Z(lambda, psi0, f0) over the grid; infimum compared against `floor`.
LowerBoundScan theorem4_scan(const op::PhaseAmplitudeKernel& kernel,
                             const std::vector<double>& lambda_grid,
                             const ExperimentOptions& options = {}, double floor = 0.05,
                             int refinement_factor = 2);

/// (2-p)^{1/p} / (q-2)^{1/q}, the p-dependence of the lower bound for
/// lambda^{1/q} |u|_q / |f0|_p.
double lower_bound_factor(double p);
/// Its equivalent form (2-p)^{2/p-1} (p-1)^{1-1/p}.
double lower_bound_factor_simplified(double p);
/// (p-1)^{1/p-1}, the closed form quoted for lower_bound_factor in the source derivation.
double quoted_closed_form(double p);

/// min over the field nodes in [1/lambda, x_max] of |u(x)| (lambda x)^{1/2}.
double decay_floor(OperatorExperiment& experiment, double x_max = 1.0);
/// |u|_r lambda^{1/r} (r-2)^{1/r} over the experiment's x-domain.
double scaled_lr_norm(OperatorExperiment& experiment, double r);

}  // namespace bgls::sharp
