#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "bgls/common.hpp"

namespace bgls::quad {

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-8;
  std::size_t max_panels = 1'000'000;

  Tolerance with_abs(double a) const {
    Tolerance t = *this;
    t.abs = a;
    return t;
  }
};

template <class T>
struct QuadResult {
  T value{};
  double abs_error = 0.0;
  std::size_t panels = 0;
  bool converged = true;
};

namespace detail {

// 15-point Kronrod abscissae/weights and the embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline bool is_nan(double v) { return std::isnan(v); }
inline bool is_nan(const std::complex<double>& v) {
  return std::isnan(v.real()) || std::isnan(v.imag());
}

template <class T>
struct Panel {
  double lo;
  double hi;
  T value;
  double error;
};

template <class T, class F>
Panel<T> kronrod15(F& g, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const T fc = g(center);
  T resk = fc * kWgk[7];
  T resg = fc * kWg[3];
  double resabs = kWgk[7] * magnitude(fc);
  std::array<T, 7> left{};
  std::array<T, 7> right{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    left[j] = g(center - dx);
    right[j] = g(center + dx);
    resk += kWgk[j] * (left[j] + right[j]);
    resabs += kWgk[j] * (magnitude(left[j]) + magnitude(right[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (left[j] + right[j]);
  }
  const T mean = resk * 0.5;
  double resasc = kWgk[7] * magnitude(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (magnitude(left[j] - mean) + magnitude(right[j] - mean));
  }
  const double scale = std::abs(half);
  resasc *= scale;
  resabs *= scale;
  const T value = resk * half;
  if (is_nan(value)) throw DomainError("integrand returned NaN");
  double error = magnitude((resk - resg) * half);
  if (resasc != 0.0 && error != 0.0) {
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    error = std::max(50.0 * eps * resabs, error);
  }
  return {lo, hi, value, error};
}

}  // namespace detail

/// Globally adaptive 7/15 Gauss-Kronrod integration starting from the
/// partition given by `breaks` (sorted, at least two entries). The panel with
/// the largest error estimate is bisected until the summed estimate meets
/// max(tol.abs, tol.rel * |value|) or the panel budget is exhausted, in which
/// case the best estimate is returned with `converged = false`.
template <class T, class F>
QuadResult<T> integrate_breakpoints(F&& g, std::span<const double> breaks, const Tolerance& tol) {
  require(breaks.size() >= 2, "integration needs at least one panel");
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    require(breaks[i - 1] < breaks[i], "integration breakpoints must be strictly increasing");
  }
  using detail::magnitude;
  std::vector<detail::Panel<T>> panels;
  panels.reserve(breaks.size() * 2);
  T total{};
  double error = 0.0;
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    panels.push_back(detail::kronrod15<T>(g, breaks[i - 1], breaks[i]));
    total += panels.back().value;
    error += panels.back().error;
  }

  auto by_error = [&panels](std::size_t a, std::size_t b) {
    if (panels[a].error != panels[b].error) return panels[a].error < panels[b].error;
    return a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> heap(by_error);
  for (std::size_t i = 0; i < panels.size(); ++i) heap.push(i);

  bool converged = true;
  while (error > std::max(tol.abs, tol.rel * magnitude(total))) {
    if (panels.size() >= tol.max_panels || heap.empty()) {
      converged = false;
      break;
    }
    const std::size_t worst = heap.top();
    heap.pop();
    const auto parent = panels[worst];
    const double mid = 0.5 * (parent.lo + parent.hi);
    if (!(parent.lo < mid && mid < parent.hi)) continue;  // cannot split further
    auto left = detail::kronrod15<T>(g, parent.lo, mid);
    auto right = detail::kronrod15<T>(g, mid, parent.hi);
    total += left.value + right.value - parent.value;
    error += left.error + right.error - parent.error;
    panels[worst] = left;
    panels.push_back(right);
    heap.push(worst);
    heap.push(panels.size() - 1);
  }

  std::sort(panels.begin(), panels.end(),
            [](const auto& a, const auto& b) { return a.lo < b.lo; });
  QuadResult<T> out;
  out.panels = panels.size();
  out.converged = converged;
  for (const auto& p : panels) {
    out.value += p.value;
    out.abs_error += p.error;
  }
  return out;
}

template <class T, class F>
QuadResult<T> integrate_adaptive_as(F&& g, double lo, double hi, const Tolerance& tol) {
  require(lo < hi, "integration requires lo < hi");
  const std::array<double, 2> breaks{lo, hi};
  return integrate_breakpoints<T>(std::forward<F>(g), breaks, tol);
}

/// Real adaptive integral of g over [lo, hi].
QuadResult<double> integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                                      const Tolerance& tol = {});

/// Breakpoints splitting [lo, hi] into panels no wider than `width`.
std::vector<double> uniform_breaks(double lo, double hi, double width);

/// Integral over [0,1] of y^{-1/2} g(y), evaluated as the integral of 2 g(t^2).
QuadResult<double> integrate_sqrt_singular(const std::function<double(double)>& g,
                                           const Tolerance& tol = {});

/// I(L) = integral over [0, L] of z^{-1/2} cos z.
double fresnel_I(double Lambda);

/// The cut-over point between direct quadrature and the asymptotic tail.
inline constexpr double kFresnelSwitch = 50.0;

/// Tail-corrected large-argument branch of fresnel_I, exposed for testing.
double fresnel_I_asymptotic(double Lambda);

enum class Singularity { none, inv_sqrt_at_origin };

/// A real test function on the box [-R, R]^d.
///
/// For `inv_sqrt_at_origin` (d = 1 only) the function is
/// f(y) = regular_part(y) / sqrt(|y|) with `regular_part` bounded and smooth
/// on each side of the origin; quadrature works with the regular part.
struct FunctionSpec {
  std::string name;
  int dimension = 1;
  double support_radius = 1.0;
  std::function<double(const Point&)> eval;
  Singularity singularity = Singularity::none;
  std::function<double(double)> regular_part;
  std::function<double(double)> closed_form_lp;
  bool identically_zero = false;

  double operator()(const Point& y) const { return eval(y); }
  double operator()(double y) const { return eval(Point{y, 0.0, 0.0}); }

  FunctionSpec scaled(double c) const;
};

/// f0(y) = |y|^{-1/2} on 0 < |y| <= 1, zero elsewhere.
FunctionSpec witness_f0();
/// f = 1 on [-1,1]^d.
FunctionSpec constant_one(int dimension = 1);
FunctionSpec zero_function(int dimension = 1);
/// 1 - |y| on [-1,1].
FunctionSpec tent_function();
/// exp(-1/(1-y^2)) on (-1,1).
FunctionSpec bump_function();

/// Looks up "f0", "one", "one-d2", "one-d3", "zero", "tent", "bump".
FunctionSpec function_from_name(const std::string& name);

/// (integral of |f|^p)^{1/p}. For the inv_sqrt singularity the power-law
/// substitution y = R s^{1/(1-p/2)} removes the endpoint singularity; p >= 2
/// diverges and raises DomainError.
QuadResult<double> lp_norm(const FunctionSpec& f, double p, const Tolerance& tol = {});

/// Integral over the box [-R,R]^d of g, nested adaptive with a breakpoint at 0
/// in every coordinate.
QuadResult<double> integrate_box(const std::function<double(const Point&)>& g, int dimension,
                                 double half_width, const Tolerance& tol = {});

}  // namespace bgls::quad
