#include "bgls/operator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "bgls/parallel.hpp"

namespace bgls::op {

namespace {

using quad::FunctionSpec;
using quad::QuadResult;
using quad::Tolerance;

double squared_norm(const Point& v, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += v[i] * v[i];
  return s;
}

double panel_width(double frequency) {
  return frequency > 0.0 ? std::numbers::pi / frequency : std::numeric_limits<double>::infinity();
}

// Breakpoints of [0, Y] in the variable t = sqrt(y) so that each panel spans
// at most `width` in y.
std::vector<double> sqrt_breaks(double y_max, double width) {
  std::vector<double> breaks{0.0};
  if (std::isfinite(width)) {
    const double count = std::min(std::floor(y_max / width), 1e6);
    for (double k = 1.0; k <= count; k += 1.0) {
      const double t = std::sqrt(k * width);
      if (t < std::sqrt(y_max)) breaks.push_back(t);
    }
  }
  breaks.push_back(std::sqrt(y_max));
  return breaks;
}

std::vector<double> split_at_zero(double half, double width) {
  auto left = quad::uniform_breaks(-half, 0.0, width);
  auto right = quad::uniform_breaks(0.0, half, width);
  left.insert(left.end(), right.begin() + 1, right.end());
  return left;
}

void merge(QuadResult<Complex>& total, const QuadResult<Complex>& part) {
  total.value += part.value;
  total.abs_error += part.abs_error;
  total.panels += part.panels;
  total.converged = total.converged && part.converged;
}

QuadResult<Complex> integrate_y_axis(const PhaseAmplitudeKernel& k, double lambda,
                                     const FunctionSpec& f, const Point& x, Point& y, int axis,
                                     double half, const Point& frequency, const Tolerance& tol) {
  const int d = k.dimension;
  bool inner_converged = true;
  auto g = [&](double t) -> Complex {
    y[axis] = t;
    if (axis + 1 == d) {
      const double weight = k.amplitude(x, y) * f(y);
      if (weight == 0.0) return {0.0, 0.0};
      return std::polar(weight, lambda * k.phase(x, y));
    }
    Point inner = y;
    auto res = integrate_y_axis(k, lambda, f, x, inner, axis + 1, half, frequency,
                                tol.with_abs(tol.abs / (2.0 * half)));
    inner_converged = inner_converged && res.converged;
    return res.value;
  };
  const auto breaks = split_at_zero(half, panel_width(lambda * frequency[axis]));
  auto res = quad::integrate_breakpoints<Complex>(g, breaks, tol);
  res.converged = res.converged && inner_converged;
  return res;
}

std::vector<double> chebyshev_nodes(int n) {
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) t[j] = std::cos((2.0 * j + 1.0) * std::numbers::pi / (2.0 * n));
  return t;
}

std::vector<double> chebyshev_weights(int n) {
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) {
    w[j] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin((2.0 * j + 1.0) * std::numbers::pi / (2.0 * n));
  }
  return w;
}

Complex barycentric(double s, const std::vector<double>& nodes, const std::vector<double>& weights,
                    const Complex* values) {
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double diff = s - nodes[j];
    if (diff == 0.0) return values[j];
    const double c = weights[j] / diff;
    num += c * values[j];
    den += c;
  }
  return num / den;
}

}  // namespace

// ---------------------------------------------------------------------------
// Kernels

PhaseAmplitudeKernel bilinear_kernel(std::string name, int dimension,
                                     std::vector<double> coefficients, AmplitudeKind kind) {
  require_dimension(dimension);
  require(coefficients.size() == static_cast<std::size_t>(dimension * dimension),
          "bilinear phase needs d*d coefficients");
  const int d = dimension;
  PhaseAmplitudeKernel k;
  k.name = std::move(name);
  k.dimension = d;
  k.amplitude_kind = kind;
  k.phase = [coefficients, d](const Point& x, const Point& y) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) s += coefficients[i * d + j] * x[i] * y[j];
    }
    return s;
  };
  if (kind == AmplitudeKind::exact_indicator) {
    k.support_constant = 2.0 * d * 1.125;
    k.x_half_width = 1.0;
    k.y_half_width = 1.0;
    k.amplitude = [d](const Point& x, const Point& y) {
      for (int i = 0; i < d; ++i) {
        if (std::abs(x[i]) > 1.0 || std::abs(y[i]) > 1.0) return 0.0;
      }
      return 1.0;
    };
  } else {
    const double c = 2.0 * d;
    k.support_constant = c;
    k.x_half_width = std::sqrt(c);
    k.y_half_width = std::sqrt(c);
    k.amplitude = [d, c](const Point& x, const Point& y) {
      const double s = (squared_norm(x, d) + squared_norm(y, d)) / c;
      return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
    };
  }
  k.amplitude_sup = 1.0;
  k.y_frequency = [coefficients, d](const Point& x) {
    Point bound{0.0, 0.0, 0.0};
    for (int j = 0; j < d; ++j) {
      for (int i = 0; i < d; ++i) bound[j] += std::abs(coefficients[i * d + j] * x[i]);
    }
    return bound;
  };
  double xf = 0.0;
  for (int i = 0; i < d; ++i) {
    double row = 0.0;
    for (int j = 0; j < d; ++j) row += std::abs(coefficients[i * d + j]);
    xf = std::max(xf, row * k.y_half_width);
  }
  k.x_frequency = xf;
  return k;
}

PhaseAmplitudeKernel fourier_kernel(int dimension, AmplitudeKind kind) {
  require_dimension(dimension);
  std::vector<double> identity(dimension * dimension, 0.0);
  for (int i = 0; i < dimension; ++i) identity[i * dimension + i] = 1.0;
  std::string name = "fourier";
  if (dimension > 1) name += "-d" + std::to_string(dimension);
  if (kind == AmplitudeKind::smooth_bump) name += "-bump";
  return bilinear_kernel(name, dimension, identity, kind);
}

PhaseAmplitudeKernel kernel_from_name(const std::string& name) {
  if (name == "fourier") return fourier_kernel(1, AmplitudeKind::exact_indicator);
  if (name == "fourier-bump") return fourier_kernel(1, AmplitudeKind::smooth_bump);
  if (name == "fourier-d2") return fourier_kernel(2, AmplitudeKind::exact_indicator);
  if (name == "fourier-d3") return fourier_kernel(3, AmplitudeKind::exact_indicator);
  throw DomainError("unknown kernel '" + name + "'");
}

AmplitudeKind amplitude_kind_from_name(const std::string& name) {
  if (name == "indicator" || name == "exact_indicator") return AmplitudeKind::exact_indicator;
  if (name == "bump" || name == "smooth_bump") return AmplitudeKind::smooth_bump;
  throw DomainError("unknown amplitude kind '" + name + "'");
}

// ---------------------------------------------------------------------------
// Operator evaluation

double operator_mass(const PhaseAmplitudeKernel& kernel, const FunctionSpec& f,
                     const Tolerance& tol) {
  if (f.identically_zero) return 0.0;
  return kernel.amplitude_sup * quad::lp_norm(f, 1.0, tol).value;
}

QuadResult<Complex> evaluate_operator(const PhaseAmplitudeKernel& kernel, double lambda,
                                      const FunctionSpec& f, const Point& x, double mass,
                                      const Tolerance& tol) {
  require(lambda >= 1.0, "the operator requires lambda >= 1");
  require(f.dimension == kernel.dimension, "function and kernel dimensions differ");
  QuadResult<Complex> total;
  total.value = {0.0, 0.0};
  if (f.identically_zero || mass == 0.0) return total;

  const Tolerance scaled = tol.with_abs(tol.abs * mass);
  const double half = std::min(kernel.y_half_width, f.support_radius);
  const Point frequency = kernel.y_frequency(x);

  if (f.singularity == quad::Singularity::inv_sqrt_at_origin) {
    require(kernel.dimension == 1, "the inv_sqrt singularity is supported for d = 1 only");
    // y = s t^2 on each side: the Jacobian 2t cancels |y|^{-1/2}.
    const auto breaks = sqrt_breaks(half, panel_width(lambda * frequency[0]));
    const Tolerance side_tol = scaled.with_abs(0.5 * scaled.abs);
    for (double side : {1.0, -1.0}) {
      auto g = [&](double t) -> Complex {
        const Point y{side * t * t, 0.0, 0.0};
        const double weight = 2.0 * kernel.amplitude(x, y) * f.regular_part(y[0]);
        if (weight == 0.0) return {0.0, 0.0};
        return std::polar(weight, lambda * kernel.phase(x, y));
      };
      merge(total, quad::integrate_breakpoints<Complex>(g, breaks, side_tol));
    }
    return total;
  }

  Point y{0.0, 0.0, 0.0};
  return integrate_y_axis(kernel, lambda, f, x, y, 0, half, frequency, scaled);
}

SampledField apply_operator(const PhaseAmplitudeKernel& kernel, double lambda,
                            const FunctionSpec& f, const std::vector<Point>& x_grid,
                            const Tolerance& tol, int threads) {
  SampledField out;
  out.lambda = lambda;
  out.dimension = kernel.dimension;
  out.x = x_grid;
  out.values.assign(x_grid.size(), Complex{});
  out.errors.assign(x_grid.size(), 0.0);
  std::vector<char> ok(x_grid.size(), 1);
  const double mass = operator_mass(kernel, f, tol);
  parallel_for(x_grid.size(), threads, [&](std::size_t i) {
    const auto res = evaluate_operator(kernel, lambda, f, x_grid[i], mass, tol);
    out.values[i] = res.value;
    out.errors[i] = res.abs_error;
    ok[i] = res.converged ? 1 : 0;
  });
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    out.converged = out.converged && ok[i];
    if (out.errors[i] > out.worst_error) {
      out.worst_error = out.errors[i];
      out.worst_index = i;
    }
  }
  return out;
}

std::vector<Point> default_x_grid(double lambda, double x_max, std::size_t count) {
  require(lambda >= 1.0 && x_max > 0.0 && count >= 2, "invalid x-grid request");
  double lo = 1.0 / lambda;
  if (lo >= x_max) lo = x_max / static_cast<double>(count);
  std::vector<double> positive(count);
  const double ratio = std::log(x_max / lo);
  for (std::size_t i = 0; i < count; ++i) {
    positive[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  positive.back() = x_max;
  std::vector<Point> grid;
  grid.reserve(2 * count);
  for (auto it = positive.rbegin(); it != positive.rend(); ++it) grid.push_back({-*it, 0.0, 0.0});
  for (double v : positive) grid.push_back({v, 0.0, 0.0});
  return grid;
}

// ---------------------------------------------------------------------------
// Field interpolant

FieldModel FieldModel::build(const std::function<QuadResult<Complex>(double)>& u, double lo,
                             double hi, std::vector<double> initial_breaks, double mass,
                             const FieldOptions& options) {
  require(lo < hi, "field interval must satisfy lo < hi");
  require(options.nodes >= 4, "field panels need at least 4 nodes");
  FieldModel model;
  model.lo_ = lo;
  model.hi_ = hi;
  model.mass_ = mass;
  model.nodes_ = options.nodes;
  model.unit_nodes_ = chebyshev_nodes(options.nodes);
  model.weights_ = chebyshev_weights(options.nodes);

  std::vector<double> breaks;
  for (double b : initial_breaks) {
    if (b > lo && b < hi) breaks.push_back(b);
  }
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [&](double a, double b) { return b - a <= 1e-14 * (hi - lo); }),
               breaks.end());
  breaks.back() = hi;

  struct Accepted {
    double lo;
    double hi;
    std::vector<Complex> values;
    std::vector<double> errors;
    bool converged;
    double check_error;
  };
  const std::size_t initial = breaks.size() - 1;
  std::vector<std::vector<Accepted>> per_initial(initial);
  std::vector<char> interpolation_ok(initial, 1);
  std::atomic<std::size_t> panel_count{0};
  const double abs_floor = options.abs * mass;
  const auto& nodes = model.unit_nodes_;
  const auto& weights = model.weights_;

  parallel_for(initial, options.threads, [&](std::size_t index) {
    struct Pending {
      double lo;
      double hi;
      int depth;
    };
    std::vector<Pending> stack{{breaks[index], breaks[index + 1], 0}};
    while (!stack.empty()) {
      const Pending p = stack.back();
      stack.pop_back();
      const double mid = 0.5 * (p.lo + p.hi);
      const double half = 0.5 * (p.hi - p.lo);
      Accepted acc{p.lo, p.hi, {}, {}, true, 0.0};
      acc.values.resize(nodes.size());
      acc.errors.resize(nodes.size());
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        const auto r = u(mid + half * nodes[j]);
        acc.values[j] = r.value;
        acc.errors[j] = r.abs_error;
        acc.converged = acc.converged && r.converged;
      }
      bool ok = true;
      for (double s : {-0.5, 0.5}) {
        const auto direct = u(mid + half * s);
        const Complex interp = barycentric(s, nodes, weights, acc.values.data());
        const double mismatch = std::abs(interp - direct.value);
        acc.check_error = std::max(acc.check_error, mismatch);
        if (mismatch > std::max(options.rel * std::abs(direct.value), abs_floor)) ok = false;
      }
      const bool budget_left = panel_count.load() < options.max_panels;
      if (!ok && p.depth < options.max_depth && budget_left && p.lo < mid && mid < p.hi) {
        // Right half first so that the left half is processed next.
        stack.push_back({mid, p.hi, p.depth + 1});
        stack.push_back({p.lo, mid, p.depth + 1});
        continue;
      }
      if (!ok) interpolation_ok[index] = 0;
      ++panel_count;
      per_initial[index].push_back(std::move(acc));
    }
  });

  model.samples_.dimension = 1;
  model.samples_.lambda = 0.0;
  for (std::size_t index = 0; index < initial; ++index) {
    model.interpolation_converged_ = model.interpolation_converged_ && interpolation_ok[index];
    for (auto& acc : per_initial[index]) {
      Panel panel{acc.lo, acc.hi, model.samples_.values.size()};
      model.panels_.push_back(panel);
      model.max_check_error_ = std::max(model.max_check_error_, acc.check_error);
      const double mid = 0.5 * (acc.lo + acc.hi);
      const double half = 0.5 * (acc.hi - acc.lo);
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        model.samples_.x.push_back({mid + half * nodes[j], 0.0, 0.0});
        model.samples_.values.push_back(acc.values[j]);
        model.samples_.errors.push_back(acc.errors[j]);
        model.max_abs_ = std::max(model.max_abs_, std::abs(acc.values[j]));
        if (acc.errors[j] > model.samples_.worst_error) {
          model.samples_.worst_error = acc.errors[j];
          model.samples_.worst_index = model.samples_.values.size() - 1;
        }
      }
      model.samples_.converged = model.samples_.converged && acc.converged;
    }
  }
  return model;
}

std::vector<double> FieldModel::breakpoints() const {
  std::vector<double> out;
  out.reserve(panels_.size() + 1);
  for (const auto& p : panels_) out.push_back(p.lo);
  out.push_back(hi_);
  return out;
}

Complex FieldModel::operator()(double x) const {
  x = std::clamp(x, lo_, hi_);
  auto it = std::upper_bound(panels_.begin(), panels_.end(), x,
                             [](double v, const Panel& p) { return v < p.lo; });
  const Panel& p = it == panels_.begin() ? panels_.front() : *(it - 1);
  const double s = (x - 0.5 * (p.lo + p.hi)) / (0.5 * (p.hi - p.lo));
  return barycentric(s, unit_nodes_, weights_, samples_.values.data() + p.first);
}

FieldModel sample_field(const PhaseAmplitudeKernel& kernel, double lambda, const FunctionSpec& f,
                        std::pair<double, double> x_domain, const Tolerance& tol,
                        const FieldOptions& options) {
  require(kernel.dimension == 1, "field interpolants are one-dimensional");
  require(lambda >= 1.0, "the operator requires lambda >= 1");
  const auto [lo, hi] = x_domain;
  require(lo < hi, "x-domain must satisfy lo < hi");
  const double mass = operator_mass(kernel, f, tol);

  // u oscillates in x with angular frequency at most lambda * x_frequency.
  const double period = 2.0 * std::numbers::pi / (lambda * std::max(kernel.x_frequency, 1e-300));
  auto breaks = quad::uniform_breaks(lo, hi, period / std::max(options.panels_per_period, 1));
  // Graded breakpoints toward x = 0 resolve the 1/lambda scale there.
  const double reach = std::max(std::abs(lo), std::abs(hi));
  for (double offset = reach; offset > 0.25 / lambda; offset *= 0.5) {
    breaks.push_back(offset);
    breaks.push_back(-offset);
  }
  breaks.push_back(0.0);

  auto u = [&](double x) {
    return evaluate_operator(kernel, lambda, f, Point{x, 0.0, 0.0}, mass, tol);
  };
  FieldModel model = FieldModel::build(u, lo, hi, std::move(breaks), mass, options);
  model.samples_.lambda = lambda;
  return model;
}

FieldModel sample_field(const PhaseAmplitudeKernel& kernel, double lambda, const FunctionSpec& f,
                        const Tolerance& tol, const FieldOptions& options) {
  return sample_field(kernel, lambda, f, {-kernel.x_half_width, kernel.x_half_width}, tol,
                      options);
}

QuadResult<double> field_lq_norm(const FieldModel& u, double q, std::pair<double, double> x_domain,
                                 const Tolerance& tol) {
  require(q >= 1.0 && std::isfinite(q), "field_lq_norm requires a finite q >= 1");
  const double lo = std::max(x_domain.first, u.lo());
  const double hi = std::min(x_domain.second, u.hi());
  require(lo < hi, "field_lq_norm: x-domain does not meet the field interval");
  const double peak = u.max_abs();
  if (peak == 0.0) return {0.0, 0.0, 0, u.converged()};

  std::vector<double> breaks{lo};
  for (double b : u.breakpoints()) {
    if (b > lo && b < hi) breaks.push_back(b);
  }
  breaks.push_back(hi);
  Tolerance inner = tol;
  inner.abs = 0.0;
  inner.rel = std::min(tol.rel * 1e-2, 1e-10);
  auto g = [&](double x) { return std::pow(std::abs(u(x)) / peak, q); };
  const auto res = quad::integrate_breakpoints<double>(g, breaks, inner);
  QuadResult<double> out;
  out.value = res.value > 0.0 ? peak * std::pow(res.value, 1.0 / q) : 0.0;
  out.abs_error = res.value > 0.0 ? out.value * res.abs_error / (q * res.value) : 0.0;
  out.panels = res.panels;
  out.converged = res.converged && u.converged();
  return out;
}

QuadResult<double> field_lq_norm(const FieldModel& u, double q, const Tolerance& tol) {
  return field_lq_norm(u, q, {u.lo(), u.hi()}, tol);
}

QuadResult<double> lq_norm_direct(const PhaseAmplitudeKernel& kernel, double lambda,
                                  const FunctionSpec& f, double q, const Tolerance& tol) {
  require(q >= 1.0 && std::isfinite(q), "lq_norm_direct requires a finite q >= 1");
  const double mass = operator_mass(kernel, f, tol);
  if (mass == 0.0) return {0.0, 0.0, 0, true};
  bool converged = true;
  auto g = [&](const Point& x) {
    const auto r = evaluate_operator(kernel, lambda, f, x, mass, tol);
    converged = converged && r.converged;
    return std::pow(std::abs(r.value) / mass, q);
  };
  const double volume = std::pow(2.0 * kernel.x_half_width, kernel.dimension);
  Tolerance outer = tol;
  outer.abs = tol.abs * volume;
  const auto res = quad::integrate_box(g, kernel.dimension, kernel.x_half_width, outer);
  QuadResult<double> out;
  out.value = res.value > 0.0 ? mass * std::pow(res.value, 1.0 / q) : 0.0;
  out.abs_error = res.value > 0.0 ? out.value * res.abs_error / (q * res.value) : 0.0;
  out.panels = res.panels;
  out.converged = res.converged && converged;
  return out;
}

// ---------------------------------------------------------------------------
// Admissibility

double check_nondegeneracy(const PhaseAmplitudeKernel& kernel,
                           const std::vector<std::pair<Point, Point>>& samples, double h) {
  require(h > 0.0, "finite-difference step must be positive");
  require(!samples.empty(), "non-degeneracy check needs at least one sample");
  const int d = kernel.dimension;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : samples) {
    double m[kMaxDimension][kMaxDimension] = {};
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        Point xp = x, xm = x, yp = y, ym = y;
        xp[i] += h;
        xm[i] -= h;
        yp[j] += h;
        ym[j] -= h;
        m[i][j] = (kernel.phase(xp, yp) - kernel.phase(xp, ym) - kernel.phase(xm, yp) +
                   kernel.phase(xm, ym)) /
                  (4.0 * h * h);
      }
    }
    double det = 0.0;
    if (d == 1) {
      det = m[0][0];
    } else if (d == 2) {
      det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    } else {
      det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
            m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
            m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    worst = std::min(worst, std::abs(det));
  }
  return worst;
}

std::vector<std::pair<Point, Point>> support_samples(const PhaseAmplitudeKernel& kernel,
                                                     int per_axis) {
  require(per_axis >= 1, "support sampling needs at least one point per axis");
  const int d = kernel.dimension;
  const int axes = 2 * d;
  std::size_t total = 1;
  for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(per_axis);
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point x{0.0, 0.0, 0.0};
    Point y{0.0, 0.0, 0.0};
    std::size_t rest = idx;
    for (int a = 0; a < axes; ++a) {
      const auto i = static_cast<double>(rest % per_axis);
      rest /= per_axis;
      const double half = a < d ? kernel.x_half_width : kernel.y_half_width;
      const double v = -half + 2.0 * half * (i + 0.5) / per_axis;
      (a < d ? x[a] : y[a - d]) = v;
    }
    if (kernel.amplitude(x, y) != 0.0) out.emplace_back(x, y);
  }
  return out;
}

double check_nondegeneracy(const PhaseAmplitudeKernel& kernel) {
  const int per_axis = kernel.dimension == 1 ? 9 : (kernel.dimension == 2 ? 5 : 3);
  return check_nondegeneracy(kernel, support_samples(kernel, per_axis),
                             1e-4 * kernel.support_constant);
}

SupportReport check_support(const PhaseAmplitudeKernel& kernel, int per_axis) {
  const int d = kernel.dimension;
  if (per_axis <= 0) per_axis = d == 1 ? 61 : (d == 2 ? 15 : 7);
  const double radius = 1.5 * std::sqrt(kernel.support_constant);
  const int axes = 2 * d;
  std::size_t total = 1;
  for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(per_axis);
  SupportReport report;
  report.samples = total;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point x{0.0, 0.0, 0.0};
    Point y{0.0, 0.0, 0.0};
    std::size_t rest = idx;
    for (int a = 0; a < axes; ++a) {
      const auto i = static_cast<double>(rest % per_axis);
      rest /= per_axis;
      const double v = -radius + 2.0 * radius * i / (per_axis - 1);
      (a < d ? x[a] : y[a - d]) = v;
    }
    const double value = std::abs(kernel.amplitude(x, y));
    if (squared_norm(x, d) + squared_norm(y, d) >= kernel.support_constant) {
      if (value != 0.0) {
        ++report.violations;
        if (value > report.max_violation) {
          report.max_violation = value;
          report.worst_x = x;
          report.worst_y = y;
        }
      }
    } else if (value != 0.0) {
      report.nonzero_somewhere = true;
    }
  }
  report.ok = report.violations == 0 && report.nonzero_somewhere;
  return report;
}

}  // namespace bgls::op
