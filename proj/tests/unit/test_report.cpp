#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bgls/report.hpp"

using namespace bgls;

TEST_CASE("doubles are written with 17 significant digits") {
  CHECK(report::format_double(0.1) == "0.10000000000000001");
  CHECK(report::format_double(1024.0) == "1024");
  CHECK(report::format_double(std::nan("")) == "nan");
  CHECK(report::format_double(HUGE_VAL) == "inf");
  CHECK(report::format_double(-HUGE_VAL) == "-inf");
  CHECK(std::stod(report::format_double(M_PI)) == M_PI);
}

TEST_CASE("sweep CSV layout") {
  sharp::SweepReport r;
  r.lambda_grid = {4.0, 16.0};
  r.p_grid = {1.5};
  r.w = {{1.25}, {1.5}};
  r.w_converged = {{1}, {0}};
  r.z = {2.0, 3.0};
  r.z_argmax_q = {3.0, 4.0};
  r.z_converged = {1, 1};
  std::ostringstream s;
  report::write_sweep_csv(s, r);
  CHECK(s.str() ==
        "lambda,p,q,W,Z,converged\n"
        "4,1.5,3,1.25,2,1\n"
        "16,1.5,3,1.5,3,0\n");

  r.w.clear();
  r.w_converged.clear();
  std::ostringstream z_only;
  report::write_sweep_csv(z_only, r);
  CHECK(z_only.str() ==
        "lambda,p,q,W,Z,converged\n"
        "4,1.5,3,nan,2,1\n"
        "16,1.3333333333333333,4,nan,3,1\n");
}

TEST_CASE("summary JSON turns non-finite values into null") {
  sharp::SweepReport r;
  r.lambda_grid = {4.0};
  r.empirical_sup = 2.0;
  const auto j = report::sweep_summary(r);
  CHECK(j["empirical_sup"].get<double>() == 2.0);
  CHECK(j["refinement_delta"].is_null());
  CHECK(j["inf_W"].is_null());
  CHECK(j["grids"]["lambda"][0].get<double>() == 4.0);
  CHECK(j.contains("excluded_cells"));
}

TEST_CASE("theorem 2 CSV layout") {
  sharp::Theorem2Result row;
  row.lambda = 4.0;
  row.lhs = 2.0;
  row.rhs = 4.0;
  row.ratio = 0.5;
  std::ostringstream s;
  report::write_theorem2_csv(s, {row});
  CHECK(s.str() ==
        "lambda,lhs,rhs,ratio,refined_ratio,refinement_delta,converged\n"
        "4,2,4,0.5,nan,nan,1\n");
}
