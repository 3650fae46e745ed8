#include "bgls/quad.hpp"

#include <numbers>

namespace bgls::quad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool inside_box(const Point& y, int d, double r) {
  for (int i = 0; i < d; ++i) {
    if (std::abs(y[i]) > r) return false;
  }
  return true;
}

// Magnitude scale of g on [lo, hi] from a coarse sample; keeps absolute
// tolerances proportional to the integrand so results scale with it.
template <class F>
double sampled_scale(F& g, double lo, double hi) {
  double peak = 0.0;
  constexpr int kSamples = 33;
  for (int i = 0; i < kSamples; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / kSamples;
    peak = std::max(peak, std::abs(g(x)));
  }
  return peak * (hi - lo);
}

QuadResult<double> integrate_box_axis(const std::function<double(const Point&)>& g, int d,
                                      int axis, Point& y, double r, const Tolerance& tol) {
  const std::array<double, 3> breaks{-r, 0.0, r};
  bool converged = true;
  auto slice = [&](double t) {
    y[axis] = t;
    if (axis + 1 == d) return g(y);
    Point inner = y;
    auto res = integrate_box_axis(g, d, axis + 1, inner, r, tol.with_abs(tol.abs / (2.0 * r)));
    converged = converged && res.converged;
    return res.value;
  };
  auto res = integrate_breakpoints<double>(slice, breaks, tol);
  res.converged = res.converged && converged;
  return res;
}

}  // namespace

QuadResult<double> integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                                      const Tolerance& tol) {
  return integrate_adaptive_as<double>(g, lo, hi, tol);
}

std::vector<double> uniform_breaks(double lo, double hi, double width) {
  require(lo < hi, "breakpoint interval must satisfy lo < hi");
  constexpr double kMaxPanels = 1e6;
  double n = 1.0;
  if (width > 0.0 && std::isfinite(width)) n = std::clamp(std::ceil((hi - lo) / width), 1.0, kMaxPanels);
  const auto count = static_cast<std::size_t>(n);
  std::vector<double> breaks(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    breaks[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count);
  }
  breaks.back() = hi;
  return breaks;
}

QuadResult<double> integrate_sqrt_singular(const std::function<double(double)>& g,
                                           const Tolerance& tol) {
  return integrate_adaptive_as<double>([&g](double t) { return 2.0 * g(t * t); }, 0.0, 1.0, tol);
}

double fresnel_I_asymptotic(double Lambda) {
  require(Lambda > 0.0, "fresnel_I requires Lambda > 0");
  // Tail T = int_L^inf z^{-1/2} e^{iz} dz = i e^{iL} L^{-1/2} sum_k (-i)^k (1/2)_k L^{-k},
  // truncated once the next term's bound drops below double resolution or
  // the asymptotic terms start growing.
  std::complex<double> series{1.0, 0.0};
  std::complex<double> factor{1.0, 0.0};
  double coeff = 1.0;
  const std::complex<double> minus_i{0.0, -1.0};
  for (int k = 1; k < 200; ++k) {
    const double next = coeff * (0.5 + (k - 1)) / Lambda;
    if (next >= coeff || next < 1e-18) break;
    coeff = next;
    factor *= minus_i;
    series += factor * coeff;
  }
  const std::complex<double> tail =
      std::complex<double>{0.0, 1.0} * std::polar(1.0, Lambda) / std::sqrt(Lambda) * series;
  return std::sqrt(std::numbers::pi / 2.0) - tail.real();
}

double fresnel_I(double Lambda) {
  require(Lambda > 0.0, "fresnel_I requires Lambda > 0");
  if (Lambda > kFresnelSwitch) return fresnel_I_asymptotic(Lambda);
  // z = t^2: I = 2 int_0^{sqrt L} cos(t^2) dt, panels at half periods of z.
  const double upper = std::sqrt(Lambda);
  std::vector<double> breaks{0.0};
  for (int k = 1; k * std::numbers::pi < Lambda; ++k) breaks.push_back(std::sqrt(k * std::numbers::pi));
  if (upper > breaks.back()) breaks.push_back(upper);
  Tolerance tol;
  tol.abs = 1e-16;
  tol.rel = 1e-13;
  tol.max_panels = 4096;
  auto res = integrate_breakpoints<double>([](double t) { return 2.0 * std::cos(t * t); },
                                           breaks, tol);
  return res.value;
}

FunctionSpec FunctionSpec::scaled(double c) const {
  FunctionSpec out = *this;
  out.name = std::to_string(c) + "*" + name;
  auto base = eval;
  out.eval = [base, c](const Point& y) { return c * base(y); };
  if (regular_part) {
    auto reg = regular_part;
    out.regular_part = [reg, c](double y) { return c * reg(y); };
  }
  if (closed_form_lp) {
    auto lp = closed_form_lp;
    out.closed_form_lp = [lp, c](double p) { return std::abs(c) * lp(p); };
  }
  out.identically_zero = identically_zero || c == 0.0;
  return out;
}

FunctionSpec witness_f0() {
  FunctionSpec f;
  f.name = "f0";
  f.dimension = 1;
  f.support_radius = 1.0;
  f.singularity = Singularity::inv_sqrt_at_origin;
  f.eval = [](const Point& y) {
    const double a = std::abs(y[0]);
    return (a > 0.0 && a <= 1.0) ? 1.0 / std::sqrt(a) : 0.0;
  };
  f.regular_part = [](double y) { return std::abs(y) <= 1.0 ? 1.0 : 0.0; };
  f.closed_form_lp = [](double p) {
    if (p < 1.0 || p >= 2.0) return kInf;
    return std::pow(4.0 / (2.0 - p), 1.0 / p);
  };
  return f;
}

FunctionSpec constant_one(int dimension) {
  require_dimension(dimension);
  FunctionSpec f;
  f.name = dimension == 1 ? "one" : "one-d" + std::to_string(dimension);
  f.dimension = dimension;
  f.eval = [dimension](const Point& y) { return inside_box(y, dimension, 1.0) ? 1.0 : 0.0; };
  f.closed_form_lp = [dimension](double p) { return std::pow(2.0, dimension / p); };
  return f;
}

FunctionSpec zero_function(int dimension) {
  require_dimension(dimension);
  FunctionSpec f;
  f.name = "zero";
  f.dimension = dimension;
  f.eval = [](const Point&) { return 0.0; };
  f.closed_form_lp = [](double) { return 0.0; };
  f.identically_zero = true;
  return f;
}

FunctionSpec tent_function() {
  FunctionSpec f;
  f.name = "tent";
  f.eval = [](const Point& y) { return std::max(0.0, 1.0 - std::abs(y[0])); };
  f.closed_form_lp = [](double p) { return std::pow(2.0 / (p + 1.0), 1.0 / p); };
  return f;
}

FunctionSpec bump_function() {
  FunctionSpec f;
  f.name = "bump";
  f.eval = [](const Point& y) {
    const double s = y[0] * y[0];
    return s < 1.0 ? std::exp(-1.0 / (1.0 - s)) : 0.0;
  };
  return f;
}

FunctionSpec function_from_name(const std::string& name) {
  if (name == "f0") return witness_f0();
  if (name == "one") return constant_one(1);
  if (name == "one-d2") return constant_one(2);
  if (name == "one-d3") return constant_one(3);
  if (name == "zero") return zero_function(1);
  if (name == "tent") return tent_function();
  if (name == "bump") return bump_function();
  throw DomainError("unknown function '" + name + "'");
}

QuadResult<double> integrate_box(const std::function<double(const Point&)>& g, int dimension,
                                 double half_width, const Tolerance& tol) {
  require_dimension(dimension);
  require(half_width > 0.0, "box half width must be positive");
  Point y{0.0, 0.0, 0.0};
  return integrate_box_axis(g, dimension, 0, y, half_width, tol);
}

QuadResult<double> lp_norm(const FunctionSpec& f, double p, const Tolerance& tol) {
  require(p >= 1.0, "lp_norm requires p >= 1");
  if (f.identically_zero) return {0.0, 0.0, 0, true};
  const double r = f.support_radius;

  QuadResult<double> power;  // integral of |f|^p
  if (f.singularity == Singularity::inv_sqrt_at_origin) {
    require(f.dimension == 1, "the inv_sqrt singularity is supported for d = 1 only");
    require(p < 2.0, "|f|_p diverges for p >= 2 with an inverse square root singularity");
    // int_0^R y^{-a} G(y) dy = R^{1-a}/(1-a) int_0^1 G(R s^{1/(1-a)}) ds with a = p/2.
    const double a = 0.5 * p;
    const double m = 1.0 / (1.0 - a);
    const double jacobian = std::pow(r, 1.0 - a) * m;
    power.value = 0.0;
    for (double side : {1.0, -1.0}) {
      auto g = [&](double s) {
        return std::pow(std::abs(f.regular_part(side * r * std::pow(s, m))), p);
      };
      const double scale = sampled_scale(g, 0.0, 1.0);
      auto res = integrate_adaptive_as<double>(g, 0.0, 1.0, tol.with_abs(tol.abs * scale));
      power.value += jacobian * res.value;
      power.abs_error += jacobian * res.abs_error;
      power.panels += res.panels;
      power.converged = power.converged && res.converged;
    }
  } else if (f.dimension == 1) {
    auto g = [&](double y) { return std::pow(std::abs(f(y)), p); };
    const double scale = sampled_scale(g, -r, r);
    const std::array<double, 3> breaks{-r, 0.0, r};
    power = integrate_breakpoints<double>(g, breaks, tol.with_abs(tol.abs * scale));
  } else {
    auto g = [&](const Point& y) { return std::pow(std::abs(f(y)), p); };
    double peak = 0.0;
    for (double t : {-0.75, -0.25, 0.25, 0.75}) {
      peak = std::max(peak, g(Point{t * r, t * r, t * r}));
    }
    power = integrate_box(g, f.dimension, r,
                          tol.with_abs(tol.abs * std::max(peak, 1e-300) * std::pow(2.0 * r, f.dimension)));
  }

  QuadResult<double> out;
  out.value = power.value > 0.0 ? std::pow(power.value, 1.0 / p) : 0.0;
  out.abs_error = power.value > 0.0 ? out.value * power.abs_error / (p * power.value) : 0.0;
  out.panels = power.panels;
  out.converged = power.converged;
  return out;
}

}  // namespace bgls::quad
