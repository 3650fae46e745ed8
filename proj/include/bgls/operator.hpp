#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bgls/common.hpp"
#include "bgls/quad.hpp"

namespace bgls::op {

using Complex = std::complex<double>;

enum class AmplitudeKind { smooth_bump, exact_indicator };

/// Phase/amplitude pair defining T_lambda f(x) = int e^{i lambda phase(x,y)} amplitude(x,y) f(y) dy.
///
/// `support_constant` is C in "amplitude(x,y) = 0 whenever |x|^2 + |y|^2 >= C".
/// The amplitude is supported in the boxes |x_i| <= x_half_width and
/// |y_j| <= y_half_width. `y_frequency(x)` bounds |d phase / d y_j| over the
/// y-box for each j, and `x_frequency` bounds |d phase / d x_i| over both
/// boxes; they set the oscillatory panel widths.
struct PhaseAmplitudeKernel {
  std::string name;
  int dimension = 1;
  std::function<double(const Point&, const Point&)> phase;
  std::function<double(const Point&, const Point&)> amplitude;
  double support_constant = 2.25;
  AmplitudeKind amplitude_kind = AmplitudeKind::exact_indicator;
  double x_half_width = 1.0;
  double y_half_width = 1.0;
  double amplitude_sup = 1.0;
  std::function<Point(const Point&)> y_frequency;
  double x_frequency = 1.0;
};

/// Phase sum_{ij} a_ij x_i y_j with `coefficients` in row-major d x d order.
PhaseAmplitudeKernel bilinear_kernel(std::string name, int dimension,
                                     std::vector<double> coefficients, AmplitudeKind kind);
/// Phase x.y with amplitude 1 on [-1,1]^{2d} (indicator) or a smooth bump.
PhaseAmplitudeKernel fourier_kernel(int dimension = 1,
                                    AmplitudeKind kind = AmplitudeKind::exact_indicator);
/// Catalog: "fourier", "fourier-bump", "fourier-d2", "fourier-d3".
PhaseAmplitudeKernel kernel_from_name(const std::string& name);
AmplitudeKind amplitude_kind_from_name(const std::string& name);

/// u = T_lambda f at a set of points.
struct SampledField {
  double lambda = 1.0;
  int dimension = 1;
  std::vector<Point> x;
  std::vector<Complex> values;
  std::vector<double> errors;
  bool converged = true;
  std::size_t worst_index = 0;
  double worst_error = 0.0;
};

/// Mass scale sup|amplitude| * |f|_1 bounding |T_lambda f| pointwise; the
/// absolute quadrature tolerances of this module are multiplied by it so
/// that results are homogeneous in f.
double operator_mass(const PhaseAmplitudeKernel& kernel, const quad::FunctionSpec& f,
                     const quad::Tolerance& tol = {});

/// T_lambda f(x) at one point. `mass` is operator_mass(kernel, f).
quad::QuadResult<Complex> evaluate_operator(const PhaseAmplitudeKernel& kernel, double lambda,
                                            const quad::FunctionSpec& f, const Point& x,
                                            double mass, const quad::Tolerance& tol = {});

SampledField apply_operator(const PhaseAmplitudeKernel& kernel, double lambda,
                            const quad::FunctionSpec& f, const std::vector<Point>& x_grid,
                            const quad::Tolerance& tol = {}, int threads = 1);

/// `count` log-spaced points on [1/lambda, x_max] followed by their mirror images.
std::vector<Point> default_x_grid(double lambda, double x_max = 1.0, std::size_t count = 512);

struct FieldOptions {
  /// Chebyshev nodes per interpolation panel.
  int nodes = 16;
  /// Interpolation acceptance: |P - u| <= max(rel |u|, abs * mass) at check points.
  double rel = 1e-8;
  double abs = 1e-10;
  /// Initial panels per oscillation period of u in x.
  int panels_per_period = 1;
  int max_depth = 30;
  std::size_t max_panels = 200000;
  int threads = 1;
};

/// Piecewise Chebyshev interpolant of u = T_lambda f on an x-interval (d = 1),
/// refined by bisection wherever direct re-evaluation at check points
/// disagrees with the interpolant.
class FieldModel {
 public:
  static FieldModel build(const std::function<quad::QuadResult<Complex>(double)>& u, double lo,
                          double hi, std::vector<double> initial_breaks, double mass,
                          const FieldOptions& options);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double lambda() const { return samples_.lambda; }
  double mass() const { return mass_; }
  bool converged() const { return samples_.converged && interpolation_converged_; }
  std::size_t panel_count() const { return panels_.size(); }
  std::vector<double> breakpoints() const;
  /// Nodes and directly computed values of u with their quadrature errors.
  const SampledField& samples() const { return samples_; }
  /// Largest interpolation mismatch seen at an accepted panel's check points.
  double max_check_error() const { return max_check_error_; }
  double max_abs() const { return max_abs_; }

  Complex operator()(double x) const;

 private:
  friend FieldModel sample_field(const PhaseAmplitudeKernel&, double, const quad::FunctionSpec&,
                                 std::pair<double, double>, const quad::Tolerance&,
                                 const FieldOptions&);
  struct Panel {
    double lo;
    double hi;
    std::size_t first;  // index of the first node in samples_
  };

  double lo_ = 0.0;
  double hi_ = 0.0;
  double mass_ = 0.0;
  int nodes_ = 16;
  std::vector<double> weights_;      // barycentric weights
  std::vector<double> unit_nodes_;   // Chebyshev nodes on [-1, 1]
  std::vector<Panel> panels_;
  SampledField samples_;
  bool interpolation_converged_ = true;
  double max_check_error_ = 0.0;
  double max_abs_ = 0.0;
};

/// Refined field of T_lambda f over `x_domain` (defaults to the kernel's x-box).
FieldModel sample_field(const PhaseAmplitudeKernel& kernel, double lambda,
                        const quad::FunctionSpec& f, std::pair<double, double> x_domain,
                        const quad::Tolerance& tol = {}, const FieldOptions& options = {});
FieldModel sample_field(const PhaseAmplitudeKernel& kernel, double lambda,
                        const quad::FunctionSpec& f, const quad::Tolerance& tol = {},
                        const FieldOptions& options = {});

/// (int over x_domain of |u|^q)^{1/q} using the interpolant; x_domain is
/// clipped to the field's interval.
quad::QuadResult<double> field_lq_norm(const FieldModel& u, double q,
                                       std::pair<double, double> x_domain,
                                       const quad::Tolerance& tol = {});
quad::QuadResult<double> field_lq_norm(const FieldModel& u, double q,
                                       const quad::Tolerance& tol = {});

/// |T_lambda f|_q over the kernel's x-box by nested quadrature with direct
/// operator evaluations (any d <= 3; intended for small lambda).
quad::QuadResult<double> lq_norm_direct(const PhaseAmplitudeKernel& kernel, double lambda,
                                        const quad::FunctionSpec& f, double q,
                                        const quad::Tolerance& tol = {});

/// min over samples of |det(d^2 phase / dx_i dy_j)| by central differences.
double check_nondegeneracy(const PhaseAmplitudeKernel& kernel,
                           const std::vector<std::pair<Point, Point>>& samples, double h);
double check_nondegeneracy(const PhaseAmplitudeKernel& kernel);

/// (x, y) pairs on a grid with nonzero amplitude.
std::vector<std::pair<Point, Point>> support_samples(const PhaseAmplitudeKernel& kernel,
                                                     int per_axis = 9);

struct SupportReport {
  bool ok = true;
  bool nonzero_somewhere = false;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;
  Point worst_x{};
  Point worst_y{};
};

/// Samples a grid covering 1.5 times the support ball and reports points with
/// |x|^2 + |y|^2 >= C where the amplitude does not vanish.
SupportReport check_support(const PhaseAmplitudeKernel& kernel, int per_axis = 0);

}  // namespace bgls::op
