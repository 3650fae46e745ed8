#pragma once

// Brute-force reference computations that share no code with the library:
// composite Simpson sums on uniform grids, power series in long double and
// Richardson extrapolation. Slow but transparent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Composite Simpson on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& g, double a, double b, std::size_t n) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  long double s = g(a) + g(b);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * g(a + h * static_cast<double>(i));
  return static_cast<double>(s * h / 3.0L);
}

// I(L) = int_0^L z^{-1/2} cos z dz = sum_k (-1)^k L^{2k+1/2} / ((2k)! (2k + 1/2)).
inline double fresnel_series(double L) {
  const long double x = L;
  long double term = 1.0L;  // x^{2k} / (2k)!
  long double sum = 0.0L;
  for (int k = 0; k < 400; ++k) {
    const long double add = term / (2.0L * k + 0.5L);
    sum += (k % 2 ? -add : add);
    term *= x * x / ((2.0L * k + 1.0L) * (2.0L * k + 2.0L));
    if (term < 1e-30L && k > 2) break;
  }
  return static_cast<double>(sum * std::sqrt(x));
}

// I(L) = 2 int_0^{sqrt L} cos t^2 dt by Simpson at h and h/2 plus one
// Richardson step (Simpson error is O(h^4)).
inline double fresnel_brute(double L, double per_radian = 16.0) {
  const double top = std::sqrt(L);
  auto g = [](double t) { return 2.0 * std::cos(t * t); };
  // The phase t^2 advances at most 2 sqrt(L) per unit t.
  const auto n = 2 * static_cast<std::size_t>(std::ceil(per_radian * top * std::max(1.0, 2.0 * top)));
  const double coarse = simpson(g, 0.0, top, n);
  const double fine = simpson(g, 0.0, top, 2 * n);
  return fine + (fine - coarse) / 15.0;
}

// u(x) = int_{-1}^{1} e^{i lambda x y} |y|^{-1/2} dy = 4 int_0^1 cos(lambda x t^2) dt.
inline double u_f0(double lambda, double x, std::size_t n) {
  const double a = lambda * x;
  return 4.0 * simpson([a](double t) { return std::cos(a * t * t); }, 0.0, 1.0, n);
}

// Samples of u_f0 on a uniform grid of [0, 1] (u is even in x).
struct FieldGrid {
  double lambda;
  std::vector<double> u;  // u[i] at x = i / (u.size() - 1)
};

inline FieldGrid f0_field(double lambda, std::size_t nx, std::size_t nt) {
  if (nx % 2) ++nx;
  FieldGrid g{lambda, std::vector<double>(nx + 1)};
  for (std::size_t i = 0; i <= nx; ++i) g.u[i] = u_f0(lambda, static_cast<double>(i) / static_cast<double>(nx), nt);
  return g;
}

// |u|_q over [-1, 1] from the half-grid by Simpson.
inline double lq_from_grid(const FieldGrid& g, double q) {
  const std::size_t n = g.u.size() - 1;
  const double h = 1.0 / static_cast<double>(n);
  long double s = std::pow(std::abs(g.u.front()), q) + std::pow(std::abs(g.u.back()), q);
  for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * std::pow(std::abs(g.u[i]), q);
  return std::pow(static_cast<double>(2.0L * s * h / 3.0L), 1.0 / q);
}

// Grid sizes resolving cos(lambda x t^2): about 32 points per unit phase.
inline std::size_t grid_size(double lambda) {
  return static_cast<std::size_t>(std::max(2048.0, 32.0 * lambda)) * 2;
}

// |f0|_p = (4 / (2 - p))^{1/p}.
inline double f0_lp(double p) { return std::pow(4.0 / (2.0 - p), 1.0 / p); }

// W(lambda, f0, p) = |u|_q lambda^{1/q} / |f0|_p.
inline double w_f0(const FieldGrid& g, double p) {
  const double q = p / (p - 1.0);
  return lq_from_grid(g, q) * std::pow(g.lambda, 1.0 / q) / f0_lp(p);
}

// Z(lambda, psi0, f0): ||f0||G(psi0) = 1, so Z is the sup over q in (2, q_max]
// of |u|_q lambda^{1/q} / psi0(q / (q - 1)), scanned on a dense log grid.
inline double z_f0(const FieldGrid& g, double q_max = 64.0, std::size_t points = 4000) {
  double best = 0.0;
  for (std::size_t k = 1; k <= points; ++k) {
    const double q = 2.0 * std::pow(q_max / 2.0, static_cast<double>(k) / static_cast<double>(points));
    const double p = q / (q - 1.0);
    best = std::max(best, lq_from_grid(g, q) * std::pow(g.lambda, 1.0 / q) / f0_lp(p));
  }
  return best;
}

}  // namespace oracle
