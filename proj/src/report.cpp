#include "bgls/report.hpp"

#include <cmath>
#include <cstdio>

namespace bgls::report {

nlohmann::json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::json array_of(const std::vector<double>& values) {
  auto out = nlohmann::json::array();
  for (double v : values) out.push_back(number_or_null(v));
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

void write_sweep_csv(std::ostream& out, const sharp::SweepReport& report) {
  out << "lambda,p,q,W,Z,converged\n";
  const bool has_z = !report.z.empty();
  for (std::size_t i = 0; i < report.lambda_grid.size(); ++i) {
    const double z = has_z ? report.z[i] : sharp::kNaN;
    const bool z_ok = !has_z || report.z_converged[i];
    if (report.w.empty()) {
      const double q = has_z ? report.z_argmax_q[i] : sharp::kNaN;
      const double p = std::isfinite(q) && q > 1.0 ? q / (q - 1.0) : sharp::kNaN;
      out << format_double(report.lambda_grid[i]) << ',' << format_double(p) << ','
          << format_double(q) << ",nan," << format_double(z) << ',' << (z_ok ? 1 : 0) << '\n';
      continue;
    }
    for (std::size_t j = 0; j < report.p_grid.size(); ++j) {
      const double p = report.p_grid[j];
      const bool ok = z_ok && report.w_converged[i][j];
      out << format_double(report.lambda_grid[i]) << ',' << format_double(p) << ','
          << format_double(p / (p - 1.0)) << ',' << format_double(report.w[i][j]) << ','
          << format_double(z) << ',' << (ok ? 1 : 0) << '\n';
    }
  }
}

nlohmann::json sweep_summary(const sharp::SweepReport& report) {
  nlohmann::json j;
  j["label"] = report.label;
  j["empirical_sup"] = number_or_null(report.empirical_sup);
  j["inf_W"] = number_or_null(report.empirical_inf_w);
  j["inf_Z"] = number_or_null(report.empirical_inf_z);
  j["refinement_delta"] = number_or_null(report.refinement_delta);
  j["refinement"] = {{"sup", number_or_null(report.sup_delta)},
                     {"inf_W", number_or_null(report.inf_w_delta)},
                     {"inf_Z", number_or_null(report.inf_z_delta)}};
  j["excluded_cells"] = report.excluded_cells;
  j["grids"] = {{"lambda", array_of(report.lambda_grid)}, {"p", array_of(report.p_grid)}};
  if (!report.z.empty()) {
    j["Z"] = array_of(report.z);
    j["Z_argmax_q"] = array_of(report.z_argmax_q);
  }
  if (!report.decay_floor.empty()) j["decay_floor"] = array_of(report.decay_floor);
  return j;
}

std::string sweep_summary_json(const sharp::SweepReport& report, int indent) {
  return sweep_summary(report).dump(indent);
}

void write_theorem2_csv(std::ostream& out, const std::vector<sharp::Theorem2Result>& rows) {
  out << "lambda,lhs,rhs,ratio,refined_ratio,refinement_delta,converged\n";
  for (const auto& r : rows) {
    out << format_double(r.lambda) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
        << ',' << format_double(r.ratio) << ',' << format_double(r.refined_ratio) << ','
        << format_double(r.refinement_delta) << ',' << (r.converged ? 1 : 0) << '\n';
  }
}

}  // namespace bgls::report
