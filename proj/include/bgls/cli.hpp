#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bgls::cli {

inline constexpr const char* kSchema = "bgls-osc-run/1";

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kSchemaError = 2,
  kNotConverged = 3,
};

/// Schema violation with the offending field path ("kernel.coefficients[2]")
/// and its 1-based line in the config text (0 when unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

struct KernelConfig {
  /// "fourier", "fourier-bump", "fourier-d2", "fourier-d3" or "custom".
  std::string name = "fourier";
  /// "indicator" or "bump"; empty keeps the catalog default.
  std::string amplitude;
  /// Dimension of a custom kernel.
  int dimension = 1;
  /// Row-major d x d coefficients a_ij of a custom phase sum a_ij x_i y_j.
  std::vector<double> coefficients;
  std::optional<double> support_constant;
};

struct CaseConfig {
  std::string psi;
  std::string f;
};

struct RunConfig {
  KernelConfig kernel;
  std::string f = "f0";
  std::string psi = "psi0";
  std::string zeta = "lower-power:0.5";
  /// Theorem 1 (psi, f) pairs; empty means the single pair (psi, f).
  std::vector<CaseConfig> cases;
  int theorem = 1;
  /// Empty grids fall back to the per-theorem defaults.
  std::vector<double> lambda_grid;
  std::vector<double> p_grid;
  double q_max = 64.0;
  double tol_abs = 1e-10;
  double tol_rel = 1e-8;
  double max_panels = 1e6;
  /// Grid multiplier of the comparison run; 1 skips the refinement check.
  int refine = 2;
  double stability_threshold = 0.05;
  double floor = 0.05;
  std::optional<std::pair<double, double>> x_domain;
  /// 0 means unset: BGLS_OSC_THREADS, then 1.
  int threads = 0;
  std::string out = "bgls-out";
  double delta = 1.0;
  double lambda = 16.0;
  int points = 512;
  double x_max = 1.0;
};

/// Parses and validates a JSON run configuration; throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

std::vector<double> default_lambda_grid(int theorem);
std::vector<double> default_p_grid(int theorem);

/// Runs one subcommand ("verify-witness", "scan", "bgls-norm", "fundamental",
/// "apply", "check-kernel") and returns its exit code.
int run(const RunConfig& config, const std::string& command, std::ostream& out,
        std::ostream& err);

/// Command line entry point.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bgls::cli
