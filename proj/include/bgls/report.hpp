#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bgls/sharpness.hpp"

namespace bgls::report {

/// 17 significant digits; "nan"/"inf" for non-finite values.
std::string format_double(double v);

/// Columns: lambda,p,q,W,Z,converged. Scans without W write one row per
/// lambda at the exponent attaining Z.
void write_sweep_csv(std::ostream& out, const sharp::SweepReport& report);

/// Summary constants, refinement deltas and grids; non-finite values become null.
nlohmann::json sweep_summary(const sharp::SweepReport& report);
std::string sweep_summary_json(const sharp::SweepReport& report, int indent = 2);

/// Columns: lambda,lhs,rhs,ratio,refined_ratio,refinement_delta,converged.
void write_theorem2_csv(std::ostream& out, const std::vector<sharp::Theorem2Result>& rows);

/// Finite values as numbers, everything else as null.
nlohmann::json number_or_null(double v);
nlohmann::json array_of(const std::vector<double>& values);

}  // namespace bgls::report
