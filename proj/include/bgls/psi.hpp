#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "bgls/common.hpp"

namespace bgls::psi {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// q = p / (p - 1). Throws DomainError for p <= 1.
double conjugate_exponent(double p);

enum class PsiKind { continuous, dirac };

/// A weight psi(p) on the open exponent interval (a, b).
///
/// The dirac kind is the degenerate weight that equals `weight` at p = r and
/// +infinity elsewhere; a ratio against +infinity counts as zero, so norms
/// built from it reduce to a single Lebesgue norm. The upper end b may be
/// +infinity, in which case suprema are taken over (a, search_cap).
class PsiFunction {
 public:
  static PsiFunction continuous(std::string name, double a, double b,
                                std::function<double(double)> eval,
                                std::pair<double, double> endpoint_limits = {kInfinity, kInfinity},
                                double search_cap = kInfinity);
  static PsiFunction dirac(double r, double a, double b, double weight = 1.0);

  PsiKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  double a() const { return a_; }
  double b() const { return b_; }
  /// min(b, cap): the finite upper end used by supremum searches.
  double upper_search_bound() const;
  double search_cap() const { return cap_; }
  double dirac_point() const { return r_; }
  double dirac_weight() const { return weight_; }
  /// Limits at a+0 and b-0 as recorded at construction (NaN when unknown).
  std::pair<double, double> endpoint_limits() const { return limits_; }

  /// psi(p); throws DomainError for p outside (a, b).
  double operator()(double p) const;

  PsiFunction scaled(double c) const;
  PsiFunction with_search_cap(double cap) const;

 private:
  PsiFunction() = default;

  PsiKind kind_ = PsiKind::continuous;
  std::string name_;
  double a_ = 1.0;
  double b_ = 2.0;
  double cap_ = kInfinity;
  double r_ = 0.0;
  double weight_ = 1.0;
  std::pair<double, double> limits_{kInfinity, kInfinity};
  std::function<double(double)> eval_;
};

/// p -> |f|_p on an exponent interval.
struct LpCurve {
  enum class Provenance { closed_form, quadrature };

  double a = 1.0;
  double b = kInfinity;
  std::function<double(double)> eval;
  Provenance provenance = Provenance::closed_form;
  double tolerance = 0.0;

  double operator()(double p) const { return eval(p); }
  LpCurve scaled(double c) const;
};

struct SupOptions {
  int interior_points = 32;
  /// Geometric offsets (hi - lo) 2^{-k}, k = 2..endpoint_levels, toward each end.
  int endpoint_levels = 40;
  int golden_iterations = 80;
  /// Relative disagreement between the full and half-density grid results
  /// above which a supremum is flagged unstable.
  double stability_threshold = 5e-3;

  SupOptions refined(int factor) const {
    SupOptions o = *this;
    o.interior_points *= factor;
    return o;
  }
};

enum class SupLocation { interior, lower_endpoint, upper_endpoint, point };

struct SupResult {
  double value = 0.0;
  double argmax = 0.0;
  SupLocation location = SupLocation::interior;
  /// Supremum recomputed from the half-density grid.
  double coarse_value = 0.0;
  bool stable = true;
  bool finite = true;
  std::size_t evaluations = 0;
  std::string diagnostic;
};

/// sup over the open interval (lo, hi) of g: grid scan with geometric
/// refinement toward both ends, then golden-section search around the best
/// interior grid point.
SupResult supremum(const std::function<double(double)>& g, double lo, double hi,
                   const SupOptions& options = {});

/// BGLS norm: sup over p in (a, b) of curve(p) / psi(p); for the dirac kind,
/// curve(r) / weight.
SupResult bgls_norm(const LpCurve& curve, const PsiFunction& psi, const SupOptions& options = {});

/// Fundamental function: sup over p of delta^{1/p} / psi(p).
SupResult fundamental_function(const PsiFunction& psi, double delta,
                               const SupOptions& options = {});

inline constexpr double kDefaultQMax = 64.0;

/// psi^{(lambda)}(q) = lambda^{-d/q} psi(q/(q-1)) on (b/(b-1), a/(a-1)),
/// with +infinity for a = 1. Suprema over the result stop at q_max.
PsiFunction transform_psi_lambda(const PsiFunction& psi, double lambda, int dimension,
                                 double q_max = kDefaultQMax);

struct PsiProduct {
  PsiFunction nu;
  PsiFunction nu_star;
};

/// nu = psi * zeta on (a, b) and nu*(q) = nu(q/(q-1)).
PsiProduct psi_product(const PsiFunction& psi, const PsiFunction& zeta,
                       double q_max = kDefaultQMax);

/// psi0(p) = (4/(2-p))^{1/p} on (1, 2).
PsiFunction psi0();
/// psi = 1 on (a, b).
PsiFunction psi_one(double a = 1.0, double b = 2.0);
/// (2-p)^{-alpha} on (1, 2).
PsiFunction psi_power(double alpha);
/// (p-1)^{-beta} on (1, 2).
PsiFunction psi_lower_power(double beta);

/// Catalog lookup: "one", "psi0", "power:alpha", "lower-power:beta", "dirac:r".
PsiFunction psi_from_name(const std::string& spec);

const char* to_string(SupLocation location);

}  // namespace bgls::psi
