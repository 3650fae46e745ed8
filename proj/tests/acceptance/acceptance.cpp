// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
//
// usage: bgls_osc_acceptance [bgls-osc executable] [data dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bgls/operator.hpp"
#include "bgls/psi.hpp"
#include "bgls/quad.hpp"
#include "bgls/report.hpp"
#include "bgls/sharpness.hpp"

using namespace bgls;
namespace fs = std::filesystem;

namespace {

// Tolerances and budgets.
constexpr double kWitnessRel = 1e-6;
constexpr double kWitnessSeconds = 5.0;
constexpr double kSincRel = 1e-8;
constexpr double kFresnelFieldRel = 1e-5;
constexpr double kClosedFormSeconds = 30.0;
constexpr double kFresnelSmallRatioTol = 1e-5;
constexpr double kBglsUnitTol = 1e-4;
constexpr double kDiracTol = 1e-8;
constexpr double kInvarianceRel = 1e-9;
constexpr double kRefinementRel = 0.05;
constexpr double kTheorem1Seconds = 300.0;
constexpr double kFloor = 0.05;
constexpr double kOracleAgreement = 1e-6;
constexpr double kIdentityTol = 1e-12;
constexpr double kBandFactor = 4.0;
constexpr double kFundamentalLimitRel = 1e-3;
constexpr double kDeterminantTol = 1e-6;

int failures = 0;

void verdict(const std::string& id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] %-4s %s | %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& id, const std::string& detail) {
  std::printf("[INFO] %-4s %s\n", id.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const op::PhaseAmplitudeKernel& fourier() {
  static const auto k = op::fourier_kernel();
  return k;
}

// ---------------------------------------------------------------------------

void witness_norms() {
  const auto start = std::chrono::steady_clock::now();
  const auto f0 = quad::witness_f0();
  double worst = 0.0;
  for (double p : {1.01, 1.25, 1.5, 1.75, 1.99}) {
    worst = std::max(worst, rel(quad::lp_norm(f0, p).value, std::pow(4.0 / (2.0 - p), 1.0 / p)));
  }
  const double t = seconds_since(start);
  verdict("1", worst < kWitnessRel && t < kWitnessSeconds, "witness Lp norms match (4/(2-p))^{1/p}",
          "max rel err " + num(worst) + ", " + num(t) + " s");
}

void operator_closed_forms() {
  const auto start = std::chrono::steady_clock::now();
  const auto one = quad::constant_one(1);
  const auto f0 = quad::witness_f0();
  double worst_sinc = 0.0, worst_fresnel = 0.0;
  for (double lambda : {8.0, 64.0}) {
    const double m_one = op::operator_mass(fourier(), one);
    const double m_f0 = op::operator_mass(fourier(), f0);
    for (double x : {0.1, 0.5, 1.0}) {
      const Point at{x, 0.0, 0.0};
      const double L = lambda * x;
      const auto u1 = op::evaluate_operator(fourier(), lambda, one, at, m_one).value;
      worst_sinc = std::max(worst_sinc, rel(u1.real(), 2.0 * std::sin(L) / L));
      const auto u0 = op::evaluate_operator(fourier(), lambda, f0, at, m_f0).value;
      worst_fresnel = std::max(worst_fresnel, rel(u0.real(), 2.0 * quad::fresnel_I(L) / std::sqrt(L)));
    }
  }
  const double t = seconds_since(start);
  verdict("2a", worst_sinc < kSincRel && t < kClosedFormSeconds, "f = 1 gives 2 sin(lambda x)/(lambda x)",
          "max rel err " + num(worst_sinc));
  verdict("2b", worst_fresnel < kFresnelFieldRel && t < kClosedFormSeconds,
          "f = f0 gives 2 (lambda x)^{-1/2} I(lambda x)",
          "max rel err " + num(worst_fresnel) + ", " + num(t) + " s");
}

void fresnel_suite() {
  const double limit = std::sqrt(std::numbers::pi / 2.0);
  bool tail_ok = true;
  std::string tail;
  for (double L = 1.0; L <= 1e6; L *= 10.0) {
    const double gap = std::abs(quad::fresnel_I(L) - limit);
    tail_ok = tail_ok && gap <= 2.0 / std::sqrt(L);
    tail += num(gap * std::sqrt(L)) + " ";
  }
  verdict("3a", tail_ok, "|I(L) - sqrt(pi/2)| <= 2/sqrt(L), L = 1..1e6", "sqrt(L)*gap: " + tail);

  double lo = 1e300, hi = -1e300;
  for (int k = 0; k <= 400; ++k) {
    const double L = std::pow(10.0, -8.0 + 8.0 * k / 400.0);
    const double r = quad::fresnel_I(L) / std::sqrt(L);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  verdict("3b", lo >= 1.5 && hi <= 2.0, "I(L)/sqrt(L) in [1.5, 2] on (0, 1]",
          "range [" + num(lo) + ", " + num(hi) + "]");
  const double small = quad::fresnel_I(1e-6) / std::sqrt(1e-6);
  verdict("3c", std::abs(small - 2.0) <= kFresnelSmallRatioTol, "I(1e-6)/sqrt(1e-6) = 2",
          "value " + report::format_double(small));
}

void bgls_identities() {
  const auto w = sharp::make_witness();
  const double unit = psi::bgls_norm(sharp::lp_curve(w.f0), w.psi0).value;
  verdict("4a", std::abs(unit - 1.0) <= kBglsUnitTol, "||f0||G(psi0) = 1", "value " + report::format_double(unit));

  double worst_dirac = 0.0;
  for (const char* name : {"f0", "tent", "bump"}) {
    const auto f = quad::function_from_name(name);
    for (double r : {1.2, 1.5, 1.8}) {
      const auto res = psi::bgls_norm(sharp::lp_curve(f), psi::PsiFunction::dirac(r, 1.0, 2.0));
      worst_dirac = std::max(worst_dirac, std::abs(res.value - quad::lp_norm(f, r).value));
    }
  }
  verdict("4b", worst_dirac <= kDiracTol, "dirac(r) norm equals |f|_r on three functions",
          "max abs diff " + num(worst_dirac));

  double worst_inv = 0.0;
  for (const char* wn : {"psi0", "one", "power:0.5", "lower-power:0.5"}) {
    const auto weight = psi::psi_from_name(wn);
    for (const char* fn : {"tent", "bump", "one"}) {
      const auto curve = sharp::lp_curve(quad::function_from_name(fn));
      const double base = psi::bgls_norm(curve, weight).value;
      for (double c : {1e-3, 0.37, 5.0, 1e3}) {
        worst_inv = std::max(worst_inv, rel(psi::bgls_norm(curve.scaled(c), weight).value, c * base));
        worst_inv = std::max(worst_inv, rel(psi::bgls_norm(curve, weight.scaled(c)).value, base / c));
      }
    }
  }
  verdict("4c", worst_inv <= kInvarianceRel, "homogeneity and weight scaling", "max rel err " + num(worst_inv));
}

std::vector<sharp::SweepReport> theorem1_reports;

void theorem1() {
  const auto start = std::chrono::steady_clock::now();
  const auto w = sharp::make_witness();
  const std::vector<double> lambdas{4, 8, 16, 32, 64, 128, 256, 512, 1024};
  theorem1_reports = sharp::theorem1_scan(fourier(), lambdas, {{w.psi0, w.f0}}, sharp::kDefaultPGrid);
  const auto& r = theorem1_reports.front();
  const double t = seconds_since(start);
  const bool ok = std::isfinite(r.empirical_sup) && r.all_converged() && r.sup_delta < kRefinementRel &&
                  t < kTheorem1Seconds;
  std::string zs;
  for (double z : r.z) zs += num(z) + " ";
  verdict("5", ok, "max Z over lambda x p finite and refinement-stable",
          "sup " + num(r.empirical_sup) + ", delta " + num(r.sup_delta) + ", excluded " +
              std::to_string(r.excluded_cells) + ", " + num(t) + " s");
  info("5", "Z per lambda: " + zs);
}

std::map<std::pair<std::string, double>, std::vector<std::pair<double, double>>> read_oracle(
    const fs::path& file) {
  std::map<std::pair<std::string, double>, std::vector<std::pair<double, double>>> out;
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::stringstream s(line);
    std::string scan, lambda, p, value;
    std::getline(s, scan, ',');
    std::getline(s, lambda, ',');
    std::getline(s, p, ',');
    std::getline(s, value, ',');
    out[{scan, std::stod(lambda)}].emplace_back(std::stod(p), std::stod(value));
  }
  return out;
}

void theorem3(const fs::path& data) {
  const auto oracle = read_oracle(data / "floor_oracle.csv");
  const std::vector<double> lambdas{64, 256, 1024};
  const std::vector<double> ps{1.9, 1.95, 1.99};
  const auto scan = sharp::theorem3_scan(fourier(), lambdas, ps, {}, kFloor);
  double oracle_min = 1e300, worst_agreement = 0.0;
  std::size_t matched = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto it = oracle.find({"W", lambdas[i]});
    if (it == oracle.end()) continue;
    for (const auto& [p, value] : it->second) {
      oracle_min = std::min(oracle_min, value);
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (std::abs(ps[j] - p) < 1e-12) {
          worst_agreement = std::max(worst_agreement, rel(scan.report.w[i][j], value));
          ++matched;
        }
      }
    }
  }
  const bool ok = scan.above_floor && scan.report.all_converged() && matched == 9 &&
                  worst_agreement < kOracleAgreement && oracle_min > kFloor;
  verdict("6a", ok, "min W(lambda, f0, p) over the corner grid exceeds 0.05",
          "min " + num(scan.infimum) + ", oracle min " + num(oracle_min) + ", oracle agreement " +
              num(worst_agreement) + " over " + std::to_string(matched) + " cells");

  double worst = 0.0;
  std::string values;
  for (double p : {1.25, 1.5, 1.75}) {
    worst = std::max(worst, std::abs(sharp::lower_bound_factor(p) - sharp::quoted_closed_form(p)));
    values += "p=" + num(p) + ": " + num(sharp::lower_bound_factor(p)) + " vs " +
              num(sharp::quoted_closed_form(p)) + "; ";
  }
  verdict("6b", worst <= kIdentityTol, "(2-p)^{1/p}/(q-2)^{1/q} = (p-1)^{1/p-1}",
          "max abs diff " + num(worst) + " (" + values + ")");
  double corrected = 0.0;
  for (double p : {1.25, 1.5, 1.75}) {
    corrected = std::max(corrected, std::abs(sharp::lower_bound_factor(p) - sharp::lower_bound_factor_simplified(p)));
  }
  double grid_min = 1e300;
  for (int k = 1; k < 10000; ++k) grid_min = std::min(grid_min, sharp::lower_bound_factor(1.0 + k * 1e-4));
  info("6b", "(2-p)^{1/p}/(q-2)^{1/q} = (2-p)^{2/p-1}(p-1)^{1-1/p} holds to " + num(corrected) +
                 "; its grid minimum on (1,2) is " + num(grid_min));
}

void theorem4() {
  const std::vector<double> lambdas{2, 8, 32, 128, 512};
  const auto scan = sharp::theorem4_scan(fourier(), lambdas, {}, kFloor);
  const auto& r = scan.report;
  const bool ok = scan.above_floor && r.all_converged() && r.refinement_delta < kRefinementRel;
  verdict("7a", ok, "min Z(lambda, psi0, f0) exceeds 0.05 and is refinement-stable",
          "min " + num(scan.infimum) + ", delta " + num(r.refinement_delta));

  double lo = 1e300, hi = 0.0;
  for (double lambda : {16.0, 256.0}) {
    sharp::OperatorExperiment e(fourier(), lambda, quad::witness_f0());
    for (double rr : {3.0, 4.0, 6.0}) {
      const double v = sharp::scaled_lr_norm(e, rr);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  verdict("7b", lo > 0.0 && hi / lo <= kBandFactor, "|u|_r lambda^{1/r} (r-2)^{1/r} within a factor-4 band",
          "range [" + num(lo) + ", " + num(hi) + "], ratio " + num(hi / lo));

  if (!theorem1_reports.empty()) {
    const double sup = theorem1_reports.front().empirical_sup;
    const bool inside = std::all_of(r.z.begin(), r.z.end(), [&](double z) {
      return z >= scan.infimum && z <= sup * (1.0 + 1e-9);
    });
    info("7", std::string("theorem 4 entries ") + (inside ? "lie within" : "leave") +
                  " [inf_Z, empirical_sup] = [" + num(scan.infimum) + ", " + num(sup) + "]");
  }
}

void theorem2() {
  const auto zeta = psi::psi_lower_power(0.5);
  bool ok = true;
  std::string detail;
  for (double lambda : {4.0, 64.0}) {
    const auto r = sharp::theorem2_check(fourier(), lambda, psi::psi0(), zeta, quad::witness_f0());
    ok = ok && std::isfinite(r.ratio) && r.ratio > 0.0 && r.converged && r.refinement_delta < kRefinementRel;
    detail += "lambda=" + num(lambda) + " ratio " + num(r.ratio) + " delta " + num(r.refinement_delta) + "; ";
  }
  verdict("8a", ok, "LHS/RHS finite and refinement-stable", detail);

  double worst = 0.0;
  for (double lambda : {4.0, 64.0}) {
    const auto phi = psi::fundamental_function(psi::psi_one(), lambda);
    worst = std::max(worst, rel(phi.value, lambda));
  }
  verdict("8b", worst <= kFundamentalLimitRel, "unit zeta gives phi(G(zeta), lambda^d) -> lambda^{d/a}",
          "max rel err " + num(worst));
}

void admissibility() {
  const double xy = op::check_nondegeneracy(fourier());
  auto additive = fourier();
  additive.phase = [](const Point& x, const Point& y) { return x[0] + y[0]; };
  const double sum = op::check_nondegeneracy(additive);
  verdict("9a", std::abs(xy - 1.0) <= kDeterminantTol && std::abs(sum) <= kDeterminantTol,
          "non-degeneracy of xy and x + y", "xy " + report::format_double(xy) + ", x+y " + report::format_double(sum));

  auto wide = fourier();
  wide.amplitude = [](const Point& x, const Point& y) {
    return std::abs(x[0]) <= 2.0 && std::abs(y[0]) <= 2.0 ? 1.0 : 0.0;
  };
  const auto bad = op::check_support(wide);
  const auto good = op::check_support(fourier());
  verdict("9b", !bad.ok && good.ok, "support check rejects an amplitude reaching |x|^2+|y|^2 >= C",
          std::to_string(bad.violations) + " violations found");
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void determinism(const std::string& exe) {
  if (exe.empty()) {
    verdict("10", false, "repeated CLI runs give identical CSVs", "no bgls-osc executable given");
    return;
  }
  const auto root = fs::temp_directory_path() / "bgls-osc-acceptance";
  fs::remove_all(root);
  bool ok = true;
  std::string detail;
  const std::vector<std::string> commands{
      "scan --theorem 3",
      "scan --theorem 2",
      "apply --lambda 64 --f f0 --points 64",
  };
  for (const auto& cmd : commands) {
    std::vector<std::string> outputs;
    for (int run = 0; run < 2; ++run) {
      const auto dir = root / (std::to_string(&cmd - commands.data()) + "-" + std::to_string(run));
      const std::string line = "\"" + exe + "\" --out \"" + dir.string() + "\"" +
                               (run ? " --threads 2 " : " ") + cmd + " > /dev/null 2>&1";
      const int status = std::system(line.c_str());
      std::string bytes;
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".csv") bytes += slurp(entry.path());
      }
      ok = ok && status == 0 && !bytes.empty();
      outputs.push_back(bytes);
    }
    const bool same = outputs[0] == outputs[1];
    ok = ok && same;
    detail += cmd + (same ? ": identical; " : ": DIFFERENT; ");
  }
  verdict("10", ok, "repeated CLI runs give identical CSVs", detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const fs::path data = argc > 2 ? fs::path(argv[2]) : fs::path(BGLS_OSC_DATA_DIR);
  const std::vector<std::function<void()>> criteria{
      witness_norms, operator_closed_forms, fresnel_suite, bgls_identities, theorem1,
      [&] { theorem3(data); }, theorem4, theorem2, admissibility, [&] { determinism(exe); }};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      verdict("?", false, "criterion threw", e.what());
    }
  }
  std::printf("%d failing check(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
