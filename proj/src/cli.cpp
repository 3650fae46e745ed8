#include "bgls/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bgls/operator.hpp"
#include "bgls/psi.hpp"
#include "bgls/quad.hpp"
#include "bgls/report.hpp"
#include "bgls/sharpness.hpp"

namespace bgls::cli {

namespace {

using nlohmann::json;
using report::format_double;

int line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Line of the last key along a dotted path such as "kernel.coefficients[2]",
// found by scanning for each quoted key after the previous one.
int line_of(std::string_view text, const std::string& path) {
  if (text.empty() || path.empty()) return 0;
  std::size_t pos = 0;
  bool found = false;
  std::stringstream parts(path);
  std::string part;
  while (std::getline(parts, part, '.')) {
    part = part.substr(0, part.find('['));
    const auto hit = text.find('"' + part + '"', pos);
    if (hit == std::string_view::npos) break;
    pos = hit;
    found = true;
  }
  return found ? line_at(text, pos) : 0;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ConfigError(field, line_of(text_, field), message);
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number, got " + std::string(v.type_name()));
    return v.get<double>();
  }

  double positive(const json& v, const std::string& field) const {
    const double x = number(v, field);
    if (!(x > 0.0) || !std::isfinite(x)) fail(field, "expected a positive finite number");
    return x;
  }

  int integer(const json& v, const std::string& field, int lo, int hi) const {
    if (!v.is_number_integer()) fail(field, "expected an integer, got " + std::string(v.type_name()));
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
      fail(field, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return static_cast<int>(x);
  }

  std::string string(const json& v, const std::string& field) const {
    if (!v.is_string()) fail(field, "expected a string, got " + std::string(v.type_name()));
    return v.get<std::string>();
  }

  std::vector<double> numbers(const json& v, const std::string& field,
                              const std::function<bool(double)>& valid,
                              const std::string& domain) const {
    if (!v.is_array()) fail(field, "expected an array of numbers");
    if (v.empty()) fail(field, "expected a nonempty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string item = field + "[" + std::to_string(i) + "]";
      const double x = number(v[i], item);
      if (!valid(x)) fail(item, "value " + format_double(x) + " outside " + domain);
      out.push_back(x);
    }
    return out;
  }

  using Handlers = std::map<std::string, std::function<void(const json&, const std::string&)>>;

  void object(const json& v, const std::string& field, const Handlers& handlers) const {
    if (!v.is_object()) fail(field, "expected an object");
    for (const auto& [key, value] : v.items()) {
      const std::string path = field.empty() ? key : field + "." + key;
      const auto it = handlers.find(key);
      if (it == handlers.end()) fail(path, "unknown key");
      it->second(value, path);
    }
  }

 private:
  std::string_view text_;
};

op::PhaseAmplitudeKernel build_kernel(const KernelConfig& k) {
  op::PhaseAmplitudeKernel kernel;
  if (k.name == "custom") {
    kernel = op::bilinear_kernel("custom", k.dimension, k.coefficients,
                                 op::amplitude_kind_from_name(k.amplitude.empty() ? "indicator"
                                                                                  : k.amplitude));
  } else {
    kernel = op::kernel_from_name(k.name);
    if (!k.amplitude.empty()) {
      kernel = op::fourier_kernel(kernel.dimension, op::amplitude_kind_from_name(k.amplitude));
    }
  }
  if (k.support_constant) kernel.support_constant = *k.support_constant;
  return kernel;
}

// Name-level checks shared by the config parser and the flag overrides.
void validate_names(const RunConfig& config, std::string_view text) {
  auto check = [&](const std::string& field, auto&& build) {
    try {
      build();
    } catch (const DomainError& e) {
      throw ConfigError(field, line_of(text, field), e.what());
    }
  };
  int dimension = 1;
  check("kernel", [&] { dimension = build_kernel(config.kernel).dimension; });
  auto check_f = [&](const std::string& field, const std::string& name) {
    check(field, [&] {
      const auto f = quad::function_from_name(name);
      require(f.dimension == dimension, "function '" + name + "' has dimension " +
                                            std::to_string(f.dimension) + ", kernel has " +
                                            std::to_string(dimension));
    });
  };
  check("psi", [&] { psi::psi_from_name(config.psi); });
  check("zeta", [&] { psi::psi_from_name(config.zeta); });
  check_f("f", config.f);
  for (std::size_t i = 0; i < config.cases.size(); ++i) {
    const std::string field = "cases[" + std::to_string(i) + "]";
    check(field + ".psi", [&] { psi::psi_from_name(config.cases[i].psi); });
    check_f(field + ".f", config.cases[i].f);
  }
}

int resolve_threads(int configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("BGLS_OSC_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  return 1;
}

sharp::ExperimentOptions experiment_options(const RunConfig& config) {
  sharp::ExperimentOptions o;
  o.tol.abs = config.tol_abs;
  o.tol.rel = config.tol_rel;
  o.tol.max_panels = config.max_panels;
  o.q_max = config.q_max;
  o.x_domain = config.x_domain;
  o.field.threads = resolve_threads(config.threads);
  return o;
}

std::filesystem::path prepare_out(const RunConfig& config) {
  std::filesystem::path dir(config.out);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << content;
}

std::size_t report_unconverged(const sharp::SweepReport& r, std::ostream& err) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < r.lambda_grid.size(); ++i) {
    for (std::size_t j = 0; j < r.p_grid.size() && i < r.w_converged.size(); ++j) {
      if (!r.w_converged[i][j]) {
        err << "non-converged cell: " << r.label << " lambda=" << format_double(r.lambda_grid[i])
            << " p=" << format_double(r.p_grid[j]) << " W\n";
        ++count;
      }
    }
    if (i < r.z_converged.size() && !r.z_converged[i]) {
      err << "non-converged cell: " << r.label << " lambda=" << format_double(r.lambda_grid[i])
          << " Z\n";
      ++count;
    }
  }
  return count;
}

// Exit status shared by the scans: non-convergence first, then refinement drift.
int scan_status(std::size_t excluded, double delta, double threshold, std::ostream& err) {
  if (excluded > 0) {
    err << excluded << " cell(s) excluded for non-convergence\n";
    return kNotConverged;
  }
  if (std::isfinite(delta) && delta > threshold) {
    err << "refinement_delta " << format_double(delta) << " exceeds stability threshold "
        << format_double(threshold) << '\n';
    return kNotConverged;
  }
  return kSuccess;
}

double nan_max(double a, double b) {
  if (std::isnan(a)) return b;
  if (std::isnan(b)) return a;
  return std::max(a, b);
}

double nan_min(double a, double b) {
  if (std::isnan(a)) return b;
  if (std::isnan(b)) return a;
  return std::min(a, b);
}

std::string sweep_csv(const sharp::SweepReport& r) {
  std::ostringstream s;
  report::write_sweep_csv(s, r);
  return s.str();
}

int scan_theorem1(const RunConfig& config, const op::PhaseAmplitudeKernel& kernel,
                  std::ostream& out, std::ostream& err) {
  std::vector<sharp::ScanCase> cases;
  std::vector<CaseConfig> names = config.cases;
  if (names.empty()) names.push_back({config.psi, config.f});
  for (const auto& c : names) cases.push_back({psi::psi_from_name(c.psi), quad::function_from_name(c.f)});
  const auto lambdas = config.lambda_grid.empty() ? default_lambda_grid(1) : config.lambda_grid;
  const auto ps = config.p_grid.empty() ? default_p_grid(1) : config.p_grid;
  const auto reports =
      sharp::theorem1_scan(kernel, lambdas, cases, ps, experiment_options(config), config.refine);

  const auto dir = prepare_out(config);
  json summary;
  summary["theorem"] = 1;
  summary["kernel"] = kernel.name;
  double sup = sharp::kNaN, inf_w = sharp::kNaN, inf_z = sharp::kNaN, delta = sharp::kNaN;
  std::size_t excluded = 0;
  summary["cases"] = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const std::string name = i == 0 ? "theorem1.csv" : "theorem1_case" + std::to_string(i + 1) + ".csv";
    write_file(dir / name, sweep_csv(r));
    auto entry = report::sweep_summary(r);
    entry["psi"] = names[i].psi;
    entry["f"] = names[i].f;
    entry["csv"] = name;
    summary["cases"].push_back(entry);
    sup = nan_max(sup, r.empirical_sup);
    inf_w = nan_min(inf_w, r.empirical_inf_w);
    inf_z = nan_min(inf_z, r.empirical_inf_z);
    delta = nan_max(delta, r.refinement_delta);
    excluded += report_unconverged(r, err);
    out << r.label << ": empirical_sup=" << format_double(r.empirical_sup)
        << " inf_W=" << format_double(r.empirical_inf_w)
        << " inf_Z=" << format_double(r.empirical_inf_z)
        << " refinement_delta=" << format_double(r.refinement_delta) << '\n';
  }
  summary["empirical_sup"] = report::number_or_null(sup);
  summary["inf_W"] = report::number_or_null(inf_w);
  summary["inf_Z"] = report::number_or_null(inf_z);
  summary["refinement_delta"] = report::number_or_null(delta);
  summary["refine"] = config.refine;
  summary["stability_threshold"] = config.stability_threshold;
  summary["grids"] = {{"lambda", report::array_of(lambdas)}, {"p", report::array_of(ps)}};
  write_file(dir / "theorem1.json", summary.dump(2) + "\n");

  if (const int status = scan_status(excluded, delta, config.stability_threshold, err)) return status;
  if (!std::isfinite(sup)) {
    err << "empirical_sup is not finite\n";
    return kCheckFailed;
  }
  return kSuccess;
}

int scan_theorem2(const RunConfig& config, const op::PhaseAmplitudeKernel& kernel,
                  std::ostream& out, std::ostream& err) {
  const auto psi_fn = psi::psi_from_name(config.psi);
  const auto zeta_fn = psi::psi_from_name(config.zeta);
  const auto f = quad::function_from_name(config.f);
  const auto lambdas = config.lambda_grid.empty() ? default_lambda_grid(2) : config.lambda_grid;
  const auto options = experiment_options(config);

  std::vector<sharp::Theorem2Result> rows;
  double delta = sharp::kNaN;
  std::size_t excluded = 0;
  bool finite = true;
  for (double lambda : lambdas) {
    rows.push_back(sharp::theorem2_check(kernel, lambda, psi_fn, zeta_fn, f, options, config.refine));
    const auto& r = rows.back();
    delta = nan_max(delta, r.refinement_delta);
    finite = finite && std::isfinite(r.ratio) && r.ratio > 0.0;
    if (!r.converged) {
      err << "non-converged cell: theorem2 lambda=" << format_double(lambda) << '\n';
      ++excluded;
    }
    out << "lambda=" << format_double(lambda) << " ratio=" << format_double(r.ratio)
        << " refinement_delta=" << format_double(r.refinement_delta) << '\n';
  }

  const auto dir = prepare_out(config);
  std::ostringstream csv;
  report::write_theorem2_csv(csv, rows);
  write_file(dir / "theorem2.csv", csv.str());
  json summary;
  summary["theorem"] = 2;
  summary["kernel"] = kernel.name;
  summary["psi"] = config.psi;
  summary["zeta"] = config.zeta;
  summary["f"] = config.f;
  std::vector<double> ratios;
  for (const auto& r : rows) ratios.push_back(r.ratio);
  summary["ratio"] = report::array_of(ratios);
  summary["refinement_delta"] = report::number_or_null(delta);
  summary["refine"] = config.refine;
  summary["stability_threshold"] = config.stability_threshold;
  summary["grids"] = {{"lambda", report::array_of(lambdas)}};
  write_file(dir / "theorem2.json", summary.dump(2) + "\n");

  if (const int status = scan_status(excluded, delta, config.stability_threshold, err)) return status;
  if (!finite) {
    err << "a Theorem 2 ratio is not finite and positive\n";
    return kCheckFailed;
  }
  return kSuccess;
}

int scan_lower_bound(const RunConfig& config, const op::PhaseAmplitudeKernel& kernel, int theorem,
                     std::ostream& out, std::ostream& err) {
  const auto lambdas = config.lambda_grid.empty() ? default_lambda_grid(theorem) : config.lambda_grid;
  const auto ps = config.p_grid.empty() ? default_p_grid(theorem) : config.p_grid;
  const auto options = experiment_options(config);
  const auto scan = theorem == 3
                        ? sharp::theorem3_scan(kernel, lambdas, ps, options, config.floor, config.refine)
                        : sharp::theorem4_scan(kernel, lambdas, options, config.floor, config.refine);

  const auto dir = prepare_out(config);
  const std::string stem = "theorem" + std::to_string(theorem);
  write_file(dir / (stem + ".csv"), sweep_csv(scan.report));
  auto summary = report::sweep_summary(scan.report);
  summary["theorem"] = theorem;
  summary["kernel"] = kernel.name;
  summary["infimum"] = report::number_or_null(scan.infimum);
  summary["floor"] = scan.floor;
  summary["above_floor"] = scan.above_floor;
  summary["refine"] = config.refine;
  summary["stability_threshold"] = config.stability_threshold;
  write_file(dir / (stem + ".json"), summary.dump(2) + "\n");

  out << stem << ": infimum=" << format_double(scan.infimum) << " floor=" << format_double(scan.floor)
      << " refinement_delta=" << format_double(scan.report.refinement_delta) << '\n';
  const std::size_t excluded = report_unconverged(scan.report, err);
  if (const int status =
          scan_status(excluded, scan.report.refinement_delta, config.stability_threshold, err)) {
    return status;
  }
  if (!scan.above_floor) {
    err << "infimum " << format_double(scan.infimum) << " does not exceed floor "
        << format_double(scan.floor) << '\n';
    return kCheckFailed;
  }
  return kSuccess;
}

void print_sup(std::ostream& out, const std::string& label, const psi::SupResult& r) {
  out << label << '=' << format_double(r.value) << " argmax=" << format_double(r.argmax)
      << " location=" << psi::to_string(r.location) << " stable=" << (r.stable ? 1 : 0) << '\n';
  if (!r.diagnostic.empty()) out << "diagnostic: " << r.diagnostic << '\n';
}

int verify_witness(const RunConfig& config, std::ostream& out) {
  const auto witness = sharp::make_witness();
  const auto options = experiment_options(config);
  double worst = -1.0;
  double worst_p = 0.0;
  for (int k = 1; k <= 99; ++k) {
    const double p = 1.0 + 0.01 * k;
    const double numeric = quad::lp_norm(witness.f0, p, options.tol).value;
    const double err = std::abs(numeric / witness.psi0(p) - 1.0);
    if (err > worst) {
      worst = err;
      worst_p = p;
    }
  }
  const auto norm = psi::bgls_norm(sharp::lp_curve(witness.f0, options.tol), witness.psi0, options.sup);
  out << "max_relative_error=" << format_double(worst) << " at p=" << format_double(worst_p) << '\n';
  print_sup(out, "bgls_norm", norm);
  return worst < 1e-6 && std::abs(norm.value - 1.0) < 1e-4 ? kSuccess : kCheckFailed;
}

int apply(const RunConfig& config, const op::PhaseAmplitudeKernel& kernel, std::ostream& out,
          std::ostream& err) {
  const auto f = quad::function_from_name(config.f);
  const auto grid = op::default_x_grid(config.lambda, config.x_max, static_cast<std::size_t>(config.points));
  const auto options = experiment_options(config);
  const auto field =
      op::apply_operator(kernel, config.lambda, f, grid, options.tol, options.field.threads);
  std::ostringstream csv;
  csv << "x,re,im,abs,err\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto v = field.values[i];
    csv << format_double(grid[i][0]) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << ',' << format_double(std::abs(v)) << ','
        << format_double(field.errors[i]) << '\n';
  }
  const auto dir = prepare_out(config);
  write_file(dir / "apply.csv", csv.str());
  out << "points=" << grid.size() << " worst_error=" << format_double(field.worst_error)
      << " at x=" << format_double(grid[field.worst_index][0]) << '\n';
  if (!field.converged) {
    err << "non-converged operator evaluation; worst cell x=" << format_double(grid[field.worst_index][0])
        << " error=" << format_double(field.worst_error) << '\n';
    return kNotConverged;
  }
  return kSuccess;
}

int check_kernel(const op::PhaseAmplitudeKernel& kernel, std::ostream& out) {
  constexpr double kDegenerate = 1e-6;
  const double det = op::check_nondegeneracy(kernel);
  const auto support = op::check_support(kernel);
  out << "kernel=" << kernel.name << " min_abs_det=" << format_double(det)
      << " support_ok=" << (support.ok ? 1 : 0) << " support_samples=" << support.samples
      << " violations=" << support.violations
      << " max_violation=" << format_double(support.max_violation) << '\n';
  if (det < kDegenerate) out << "phase is degenerate on the amplitude support\n";
  if (!support.ok) out << "amplitude does not vanish outside |x|^2 + |y|^2 < C\n";
  return det >= kDegenerate && support.ok ? kSuccess : kCheckFailed;
}

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error("config" + (line > 0 ? " line " + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ", field '" + field + "'") + ": " +
                         message),
      field_(std::move(field)),
      line_(line) {}

std::vector<double> default_lambda_grid(int theorem) {
  switch (theorem) {
    case 2: return {4, 64};
    case 3: return {64, 256, 1024};
    case 4: return {2, 8, 32, 128, 512};
    default: return {4, 8, 16, 32, 64, 128, 256, 512, 1024};
  }
}

std::vector<double> default_p_grid(int theorem) {
  if (theorem == 3) return {1.9, 1.95, 1.99};
  return sharp::kDefaultPGrid;
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  const Parser p(text);
  if (!root.is_object()) p.fail("", "top level must be a JSON object");
  if (!root.contains("schema")) p.fail("schema", std::string("missing; expected \"") + kSchema + "\"");

  RunConfig c;
  auto exponent = [](double x) { return x > 1.0 && x <= 2.0; };
  Parser::Handlers handlers{
      {"schema",
       [&](const json& v, const std::string& field) {
         if (p.string(v, field) != kSchema) p.fail(field, std::string("expected \"") + kSchema + "\"");
       }},
      {"kernel",
       [&](const json& v, const std::string& field) {
         p.object(v, field,
                  {{"name", [&](const json& x, const std::string& f) { c.kernel.name = p.string(x, f); }},
                   {"amplitude",
                    [&](const json& x, const std::string& f) { c.kernel.amplitude = p.string(x, f); }},
                   {"dimension",
                    [&](const json& x, const std::string& f) {
                      c.kernel.dimension = p.integer(x, f, 1, static_cast<int>(kMaxDimension));
                    }},
                   {"coefficients",
                    [&](const json& x, const std::string& f) {
                      c.kernel.coefficients = p.numbers(
                          x, f, [](double a) { return std::isfinite(a); }, "finite reals");
                    }},
                   {"support_constant",
                    [&](const json& x, const std::string& f) { c.kernel.support_constant = p.positive(x, f); }}});
       }},
      {"f", [&](const json& v, const std::string& field) { c.f = p.string(v, field); }},
      {"psi", [&](const json& v, const std::string& field) { c.psi = p.string(v, field); }},
      {"zeta", [&](const json& v, const std::string& field) { c.zeta = p.string(v, field); }},
      {"cases",
       [&](const json& v, const std::string& field) {
         if (!v.is_array() || v.empty()) p.fail(field, "expected a nonempty array of {psi, f} objects");
         for (std::size_t i = 0; i < v.size(); ++i) {
           const std::string item = field + "[" + std::to_string(i) + "]";
           CaseConfig entry{c.psi, c.f};
           bool has_psi = false, has_f = false;
           p.object(v[i], item,
                    {{"psi", [&](const json& x, const std::string& f) { entry.psi = p.string(x, f); has_psi = true; }},
                     {"f", [&](const json& x, const std::string& f) { entry.f = p.string(x, f); has_f = true; }}});
           if (!has_psi || !has_f) p.fail(item, "each case needs both \"psi\" and \"f\"");
           c.cases.push_back(entry);
         }
       }},
      {"theorem", [&](const json& v, const std::string& field) { c.theorem = p.integer(v, field, 1, 4); }},
      {"lambda_grid",
       [&](const json& v, const std::string& field) {
         c.lambda_grid = p.numbers(
             v, field, [](double x) { return x >= 1.0 && std::isfinite(x); }, "[1, inf)");
       }},
      {"p_grid",
       [&](const json& v, const std::string& field) { c.p_grid = p.numbers(v, field, exponent, "(1, 2]"); }},
      {"q_max",
       [&](const json& v, const std::string& field) {
         c.q_max = p.positive(v, field);
         if (c.q_max <= 2.0) p.fail(field, "expected q_max > 2");
       }},
      {"tolerance",
       [&](const json& v, const std::string& field) {
         p.object(v, field,
                  {{"abs", [&](const json& x, const std::string& f) { c.tol_abs = p.positive(x, f); }},
                   {"rel", [&](const json& x, const std::string& f) { c.tol_rel = p.positive(x, f); }},
                   {"max_panels",
                    [&](const json& x, const std::string& f) { c.max_panels = p.integer(x, f, 1, 100000000); }}});
       }},
      {"refine", [&](const json& v, const std::string& field) { c.refine = p.integer(v, field, 1, 16); }},
      {"stability_threshold",
       [&](const json& v, const std::string& field) { c.stability_threshold = p.positive(v, field); }},
      {"floor", [&](const json& v, const std::string& field) { c.floor = p.positive(v, field); }},
      {"x_domain",
       [&](const json& v, const std::string& field) {
         const auto d = p.numbers(v, field, [](double x) { return std::isfinite(x); }, "finite reals");
         if (d.size() != 2 || !(d[0] < d[1])) p.fail(field, "expected [lo, hi] with lo < hi");
         c.x_domain = std::pair{d[0], d[1]};
       }},
      {"threads", [&](const json& v, const std::string& field) { c.threads = p.integer(v, field, 1, 256); }},
      {"out", [&](const json& v, const std::string& field) { c.out = p.string(v, field); }},
      {"delta", [&](const json& v, const std::string& field) { c.delta = p.positive(v, field); }},
      {"lambda",
       [&](const json& v, const std::string& field) {
         c.lambda = p.positive(v, field);
         if (c.lambda < 1.0) p.fail(field, "expected lambda >= 1");
       }},
      {"points", [&](const json& v, const std::string& field) { c.points = p.integer(v, field, 2, 1000000); }},
      {"x_max", [&](const json& v, const std::string& field) { c.x_max = p.positive(v, field); }},
  };
  p.object(root, "", handlers);
  validate_names(c, text);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("", 0, "cannot read " + path);
  std::ostringstream s;
  s << file.rdbuf();
  return parse_config(s.str());
}

int run(const RunConfig& config, const std::string& command, std::ostream& out, std::ostream& err) {
  try {
    const auto kernel = build_kernel(config.kernel);
    if (command == "check-kernel") return check_kernel(kernel, out);
    validate_names(config, {});
    if (command == "verify-witness") return verify_witness(config, out);
    if (command == "scan") {
      switch (config.theorem) {
        case 1: return scan_theorem1(config, kernel, out, err);
        case 2: return scan_theorem2(config, kernel, out, err);
        default: return scan_lower_bound(config, kernel, config.theorem, out, err);
      }
    }
    if (command == "bgls-norm") {
      const auto options = experiment_options(config);
      const auto curve = sharp::lp_curve(quad::function_from_name(config.f), options.tol);
      const auto r = psi::bgls_norm(curve, psi::psi_from_name(config.psi), options.sup);
      print_sup(out, "bgls_norm", r);
      return r.stable ? kSuccess : kNotConverged;
    }
    if (command == "fundamental") {
      const auto r = psi::fundamental_function(psi::psi_from_name(config.psi), config.delta,
                                               experiment_options(config).sup);
      print_sup(out, "fundamental", r);
      return r.stable ? kSuccess : kNotConverged;
    }
    if (command == "apply") return apply(config, kernel, out, err);
    err << "unknown command '" << command << "'\n";
    return kSchemaError;
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kSchemaError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kSchemaError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grand Lebesgue norms and oscillatory integral experiments", "bgls-osc"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  int threads = 0, refine = 0, theorem = 0, points = 0;
  double tol_abs = 0, tol_rel = 0, q_max = 0, delta = 0, lambda = 0, x_max = 0;
  std::string psi_name, f_name, kernel_name, amplitude;

  auto* o_config = app.add_option("--config", config_path, "JSON run configuration");
  auto* o_out = app.add_option("--out", out_dir, "Output directory");
  auto* o_threads = app.add_option("--threads", threads, "Worker threads (default: BGLS_OSC_THREADS or 1)")
                        ->check(CLI::Range(1, 256));
  auto* o_abs = app.add_option("--tol-abs", tol_abs, "Absolute quadrature tolerance")
                    ->check(CLI::PositiveNumber);
  auto* o_rel = app.add_option("--tol-rel", tol_rel, "Relative quadrature tolerance")
                    ->check(CLI::PositiveNumber);
  auto* o_qmax = app.add_option("--qmax", q_max, "Cap on the dual exponent search")
                     ->check(CLI::Range(2.0 + 1e-12, 1e6));
  auto* o_refine = app.add_option("--refine", refine, "Grid multiplier of the refinement rerun (1 = off)")
                       ->check(CLI::Range(1, 16));

  app.add_subcommand("verify-witness", "Compare |f0|_p by quadrature with its closed form");
  auto* scan = app.add_subcommand("scan", "Run a theorem-level sweep and write CSV/JSON reports");
  auto* o_theorem = scan->add_option("--theorem", theorem, "1, 2, 3 or 4")->check(CLI::Range(1, 4));
  auto* norm = app.add_subcommand("bgls-norm", "Grand Lebesgue norm of a catalog function");
  auto* fundamental = app.add_subcommand("fundamental", "Fundamental function of a weight");
  auto* apply_cmd = app.add_subcommand("apply", "Sample u = T_lambda f on the default x-grid");
  auto* check = app.add_subcommand("check-kernel", "Support and non-degeneracy checks");

  std::vector<CLI::Option*> o_psi, o_f, o_kernel;
  for (auto* sub : {norm, fundamental}) o_psi.push_back(sub->add_option("--psi", psi_name, "Weight name"));
  for (auto* sub : {norm, apply_cmd}) o_f.push_back(sub->add_option("--f", f_name, "Function name"));
  for (auto* sub : {apply_cmd, check}) o_kernel.push_back(sub->add_option("--kernel", kernel_name, "Kernel name"));
  auto* o_amplitude = check->add_option("--amplitude", amplitude, "indicator or bump");
  auto* o_delta = fundamental->add_option("--delta", delta, "Measure delta > 0")->check(CLI::PositiveNumber);
  auto* o_lambda = apply_cmd->add_option("--lambda", lambda, "Frequency parameter >= 1")
                       ->check(CLI::Range(1.0, 1e12));
  auto* o_points = apply_cmd->add_option("--points", points, "Log-spaced points per side")
                       ->check(CLI::Range(2, 1000000));
  auto* o_xmax = apply_cmd->add_option("--x-max", x_max, "Largest |x|")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kSchemaError;
  }

  RunConfig config;
  try {
    if (o_config->count() > 0) config = load_config(config_path);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kSchemaError;
  }
  auto given = [](const std::vector<CLI::Option*>& options) {
    return std::any_of(options.begin(), options.end(), [](auto* o) { return o->count() > 0; });
  };
  if (o_out->count()) config.out = out_dir;
  if (o_threads->count()) config.threads = threads;
  if (o_abs->count()) config.tol_abs = tol_abs;
  if (o_rel->count()) config.tol_rel = tol_rel;
  if (o_qmax->count()) config.q_max = q_max;
  if (o_refine->count()) config.refine = refine;
  if (o_theorem->count()) config.theorem = theorem;
  if (given(o_psi)) config.psi = psi_name;
  if (given(o_f)) config.f = f_name;
  if (given(o_kernel)) {
    config.kernel = KernelConfig{};
    config.kernel.name = kernel_name;
  }
  if (o_amplitude->count()) config.kernel.amplitude = amplitude;
  if (o_delta->count()) config.delta = delta;
  if (o_lambda->count()) config.lambda = lambda;
  if (o_points->count()) config.points = points;
  if (o_xmax->count()) config.x_max = x_max;

  return run(config, app.get_subcommands().front()->get_name(), out, err);
}

}  // namespace bgls::cli
