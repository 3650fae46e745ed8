#include "bgls/psi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace bgls::psi {

namespace {

double parse_number(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw DomainError("malformed number '" + text + "' in " + context);
  }
  return v;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct GridPoint {
  double x;
  bool coarse;
};

std::vector<GridPoint> supremum_grid(double lo, double hi, const SupOptions& o) {
  std::vector<GridPoint> grid;
  const int n = std::max(o.interior_points, 2);
  const double width = hi - lo;
  for (int i = 1; i < n; ++i) grid.push_back({lo + width * i / n, i % 2 == 0});
  for (int k = 2; k <= o.endpoint_levels; ++k) {
    const double offset = width * std::ldexp(1.0, -k);
    grid.push_back({lo + offset, k % 2 == 0});
    grid.push_back({hi - offset, k % 2 == 0});
  }
  std::sort(grid.begin(), grid.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
  std::vector<GridPoint> unique;
  for (const auto& g : grid) {
    if (!(g.x > lo && g.x < hi)) continue;
    if (!unique.empty() && unique.back().x == g.x) {
      unique.back().coarse = unique.back().coarse || g.coarse;
    } else {
      unique.push_back(g);
    }
  }
  return unique;
}

// Golden-section maximization of g on [left, right]; returns the best value
// seen together with its abscissa.
std::pair<double, double> golden_max(const std::function<double(double)>& g, double left,
                                     double right, double span, int iterations,
                                     std::size_t& evaluations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = right - inv_phi * (right - left);
  double d = left + inv_phi * (right - left);
  double gc = g(c);
  double gd = g(d);
  evaluations += 2;
  double best_x = gc >= gd ? c : d;
  double best = std::max(gc, gd);
  for (int it = 0; it < iterations && (right - left) > 1e-12 * span; ++it) {
    if (gc >= gd) {
      right = d;
      d = c;
      gd = gc;
      c = right - inv_phi * (right - left);
      gc = g(c);
      if (gc > best) best = gc, best_x = c;
    } else {
      left = c;
      c = d;
      gc = gd;
      d = left + inv_phi * (right - left);
      gd = g(d);
      if (gd > best) best = gd, best_x = d;
    }
    ++evaluations;
  }
  return {best, best_x};
}

struct GridMax {
  double value;
  double x;
  SupLocation location;
};

GridMax refine_grid_max(const std::function<double(double)>& g, const std::vector<double>& xs,
                        const std::vector<double>& values, double span, int iterations,
                        std::size_t& evaluations) {
  const auto best = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  GridMax out{values[best], xs[best], SupLocation::interior};
  if (best == 0) {
    out.location = SupLocation::lower_endpoint;
    return out;
  }
  if (best + 1 == xs.size()) {
    out.location = SupLocation::upper_endpoint;
    return out;
  }
  auto [v, x] = golden_max(g, xs[best - 1], xs[best + 1], span, iterations, evaluations);
  if (v > out.value) {
    out.value = v;
    out.x = x;
  }
  return out;
}

}  // namespace

double conjugate_exponent(double p) {
  require(p > 1.0, "conjugate exponent requires p > 1");
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

const char* to_string(SupLocation location) {
  switch (location) {
    case SupLocation::interior: return "interior";
    case SupLocation::lower_endpoint: return "lower_endpoint";
    case SupLocation::upper_endpoint: return "upper_endpoint";
    case SupLocation::point: return "point";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// PsiFunction

PsiFunction PsiFunction::continuous(std::string name, double a, double b,
                                    std::function<double(double)> eval,
                                    std::pair<double, double> endpoint_limits, double search_cap) {
  require(a >= 1.0 && a < b, "psi requires 1 <= a < b");
  require(static_cast<bool>(eval), "psi requires an evaluator");
  require(search_cap > a, "psi search cap must exceed a");
  PsiFunction psi;
  psi.kind_ = PsiKind::continuous;
  psi.name_ = std::move(name);
  psi.a_ = a;
  psi.b_ = b;
  psi.cap_ = search_cap;
  psi.limits_ = endpoint_limits;
  psi.eval_ = std::move(eval);
  // Positivity on a sample of interior points.
  const double hi = psi.upper_search_bound();
  if (std::isfinite(hi)) {
    for (int i = 1; i < 16; ++i) {
      const double p = a + (hi - a) * i / 16.0;
      const double v = psi.eval_(p);
      require(v > 0.0 && !std::isnan(v), "psi '" + psi.name_ + "' must be positive on (a, b)");
    }
  }
  return psi;
}

PsiFunction PsiFunction::dirac(double r, double a, double b, double weight) {
  require(a >= 1.0 && a < b, "psi requires 1 <= a < b");
  require(a < r && r < b, "dirac(r) requires a < r < b");
  require(weight > 0.0 && std::isfinite(weight), "dirac weight must be positive and finite");
  PsiFunction psi;
  psi.kind_ = PsiKind::dirac;
  psi.name_ = "dirac:" + format_number(r);
  psi.a_ = a;
  psi.b_ = b;
  psi.r_ = r;
  psi.weight_ = weight;
  psi.limits_ = {kInfinity, kInfinity};
  return psi;
}

double PsiFunction::upper_search_bound() const { return std::min(b_, cap_); }

double PsiFunction::operator()(double p) const {
  if (!(p > a_ && p < b_)) {
    throw DomainError("psi '" + name_ + "' evaluated at p = " + format_number(p) +
                      " outside (" + format_number(a_) + ", " + format_number(b_) + ")");
  }
  if (kind_ == PsiKind::dirac) return p == r_ ? weight_ : kInfinity;
  return eval_(p);
}

PsiFunction PsiFunction::scaled(double c) const {
  require(c > 0.0 && std::isfinite(c), "psi scale factor must be positive");
  PsiFunction out = *this;
  out.name_ = format_number(c) + "*" + name_;
  if (kind_ == PsiKind::dirac) {
    out.weight_ = weight_ * c;
    return out;
  }
  auto base = eval_;
  out.eval_ = [base, c](double p) { return c * base(p); };
  out.limits_ = {limits_.first * c, limits_.second * c};
  return out;
}

PsiFunction PsiFunction::with_search_cap(double cap) const {
  require(cap > a_, "psi search cap must exceed a");
  PsiFunction out = *this;
  out.cap_ = cap;
  return out;
}

LpCurve LpCurve::scaled(double c) const {
  LpCurve out = *this;
  auto base = eval;
  out.eval = [base, c](double p) { return std::abs(c) * base(p); };
  return out;
}

// ---------------------------------------------------------------------------
// Suprema

SupResult supremum(const std::function<double(double)>& g, double lo, double hi,
                   const SupOptions& options) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi,
          "supremum needs a nonempty finite interval");
  const auto grid = supremum_grid(lo, hi, options);
  require(!grid.empty(), "supremum grid is empty");

  SupResult out;
  std::vector<double> xs;
  std::vector<double> values;
  std::vector<double> coarse_xs;
  std::vector<double> coarse_values;
  for (const auto& point : grid) {
    const double v = g(point.x);
    ++out.evaluations;
    if (!std::isfinite(v)) {
      out.value = kInfinity;
      out.coarse_value = kInfinity;
      out.argmax = point.x;
      out.finite = false;
      out.stable = false;
      out.diagnostic = "non-finite value at " + format_number(point.x);
      return out;
    }
    xs.push_back(point.x);
    values.push_back(v);
    if (point.coarse) {
      coarse_xs.push_back(point.x);
      coarse_values.push_back(v);
    }
  }

  const double span = hi - lo;
  const auto full = refine_grid_max(g, xs, values, span, options.golden_iterations, out.evaluations);
  out.value = full.value;
  out.argmax = full.x;
  out.location = full.location;
  if (coarse_xs.empty()) {
    out.coarse_value = out.value;
  } else {
    const auto coarse = refine_grid_max(g, coarse_xs, coarse_values, span,
                                        options.golden_iterations, out.evaluations);
    out.coarse_value = coarse.value;
    if (coarse.value > out.value) {
      // The coarse bracket found a higher local maximum; keep the larger.
      out.value = coarse.value;
      out.argmax = coarse.x;
      out.location = coarse.location;
    }
  }
  const double scale = std::abs(out.value);
  out.stable = scale == 0.0 ||
               std::abs(out.value - out.coarse_value) <= options.stability_threshold * scale;
  return out;
}

SupResult bgls_norm(const LpCurve& curve, const PsiFunction& psi, const SupOptions& options) {
  require(static_cast<bool>(curve.eval), "Lp curve has no evaluator");
  if (psi.kind() == PsiKind::dirac) {
    const double r = psi.dirac_point();
    require(r >= curve.a && r <= curve.b, "Lp curve cannot be evaluated at the dirac point");
    SupResult out;
    out.value = curve(r) / psi.dirac_weight();
    out.coarse_value = out.value;
    out.argmax = r;
    out.location = SupLocation::point;
    out.evaluations = 1;
    out.finite = std::isfinite(out.value);
    if (!out.finite) out.diagnostic = "non-finite Lp value at the dirac point";
    return out;
  }
  const double lo = psi.a();
  const double hi = psi.upper_search_bound();
  require(std::isfinite(hi) && lo < hi, "bgls_norm: empty effective exponent domain");
  require(curve.a <= lo && curve.b >= hi,
          "bgls_norm: Lp curve domain does not cover the psi domain");
  auto ratio = [&](double p) {
    const double w = psi(p);
    if (std::isinf(w)) return 0.0;
    return curve(p) / w;
  };
  return supremum(ratio, lo, hi, options);
}

SupResult fundamental_function(const PsiFunction& psi, double delta, const SupOptions& options) {
  require(delta > 0.0 && std::isfinite(delta), "fundamental function requires delta > 0");
  if (psi.kind() == PsiKind::dirac) {
    SupResult out;
    out.value = std::pow(delta, 1.0 / psi.dirac_point()) / psi.dirac_weight();
    out.coarse_value = out.value;
    out.argmax = psi.dirac_point();
    out.location = SupLocation::point;
    out.evaluations = 1;
    return out;
  }
  const double lo = psi.a();
  const double hi = psi.upper_search_bound();
  require(std::isfinite(hi) && lo < hi, "fundamental_function: empty effective exponent domain");
  auto ratio = [&](double p) {
    const double w = psi(p);
    if (std::isinf(w)) return 0.0;
    return std::pow(delta, 1.0 / p) / w;
  };
  return supremum(ratio, lo, hi, options);
}

// ---------------------------------------------------------------------------
// Transforms

PsiFunction transform_psi_lambda(const PsiFunction& psi, double lambda, int dimension,
                                 double q_max) {
  require(lambda >= 1.0 && std::isfinite(lambda), "transform_psi_lambda requires lambda >= 1");
  require_dimension(dimension);
  require(psi.b() <= 2.0, "transform_psi_lambda requires b <= 2");
  const double a = psi.a();
  const double b = psi.b();
  const double q_lo = b / (b - 1.0);
  const double q_hi = a == 1.0 ? kInfinity : a / (a - 1.0);
  const double d = dimension;

  if (psi.kind() == PsiKind::dirac) {
    const double q = conjugate_exponent(psi.dirac_point());
    return PsiFunction::dirac(q, q_lo, q_hi, psi.dirac_weight() * std::pow(lambda, -d / q));
  }

  auto eval = [psi, lambda, d, a, b](double q) {
    double p = q / (q - 1.0);
    // Rounding at the edges of the q-domain must not leave (a, b).
    if (p >= b) p = std::nextafter(b, a);
    if (p <= a) p = std::nextafter(a, b);
    return std::pow(lambda, -d / q) * psi(p);
  };
  const auto limits = psi.endpoint_limits();
  const std::pair<double, double> new_limits{
      std::pow(lambda, -d / q_lo) * limits.second,
      (std::isinf(q_hi) ? 1.0 : std::pow(lambda, -d / q_hi)) * limits.first};
  std::ostringstream name;
  name << psi.name() << "^(lambda=" << lambda << ",d=" << dimension << ")";
  return PsiFunction::continuous(name.str(), q_lo, q_hi, eval, new_limits,
                                 std::min(q_hi, q_max));
}

PsiProduct psi_product(const PsiFunction& psi, const PsiFunction& zeta, double q_max) {
  require(psi.a() == zeta.a() && psi.b() == zeta.b(), "psi_product requires matching domains");
  require(psi.b() <= 2.0, "psi_product requires b <= 2");
  const std::string name = "(" + psi.name() + ")*(" + zeta.name() + ")";
  auto make_nu = [&]() -> PsiFunction {
    if (psi.kind() == PsiKind::dirac && zeta.kind() == PsiKind::dirac) {
      require(psi.dirac_point() == zeta.dirac_point(),
              "product of dirac weights at different points is identically infinite");
      return PsiFunction::dirac(psi.dirac_point(), psi.a(), psi.b(),
                                psi.dirac_weight() * zeta.dirac_weight());
    }
    if (psi.kind() == PsiKind::dirac) {
      return PsiFunction::dirac(psi.dirac_point(), psi.a(), psi.b(),
                                psi.dirac_weight() * zeta(psi.dirac_point()));
    }
    if (zeta.kind() == PsiKind::dirac) {
      return PsiFunction::dirac(zeta.dirac_point(), psi.a(), psi.b(),
                                zeta.dirac_weight() * psi(zeta.dirac_point()));
    }
    const auto l1 = psi.endpoint_limits();
    const auto l2 = zeta.endpoint_limits();
    return PsiFunction::continuous(
        name, psi.a(), psi.b(), [psi, zeta](double p) { return psi(p) * zeta(p); },
        {l1.first * l2.first, l1.second * l2.second});
  };
  PsiFunction nu = make_nu();
  PsiFunction nu_star = transform_psi_lambda(nu, 1.0, 1, q_max);
  return {nu, nu_star};
}

// ---------------------------------------------------------------------------
// Catalog

PsiFunction psi0() {
  return PsiFunction::continuous(
      "psi0", 1.0, 2.0, [](double p) { return std::pow(4.0 / (2.0 - p), 1.0 / p); },
      {4.0, kInfinity});
}

PsiFunction psi_one(double a, double b) {
  return PsiFunction::continuous("one", a, b, [](double) { return 1.0; }, {1.0, 1.0});
}

PsiFunction psi_power(double alpha) {
  require(alpha >= 0.0, "power:alpha requires alpha >= 0");
  return PsiFunction::continuous(
      "power:" + format_number(alpha), 1.0, 2.0,
      [alpha](double p) { return std::pow(2.0 - p, -alpha); },
      {1.0, alpha > 0.0 ? kInfinity : 1.0});
}

PsiFunction psi_lower_power(double beta) {
  require(beta >= 0.0, "lower-power:beta requires beta >= 0");
  return PsiFunction::continuous(
      "lower-power:" + format_number(beta), 1.0, 2.0,
      [beta](double p) { return std::pow(p - 1.0, -beta); },
      {beta > 0.0 ? kInfinity : 1.0, 1.0});
}

PsiFunction psi_from_name(const std::string& spec) {
  if (spec == "one") return psi_one();
  if (spec == "psi0") return psi0();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const double value = parse_number(spec.substr(colon + 1), "psi '" + spec + "'");
    if (head == "power") return psi_power(value);
    if (head == "lower-power") return psi_lower_power(value);
    if (head == "dirac") {
      // Exponents at or beyond 2 live on (1, inf); they cannot be transformed.
      return PsiFunction::dirac(value, 1.0, value < 2.0 ? 2.0 : kInfinity);
    }
  }
  throw DomainError("unknown psi '" + spec + "'");
}

}  // namespace bgls::psi
