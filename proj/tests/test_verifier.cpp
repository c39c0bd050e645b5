// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>

#include "hypercheck/verifier.hpp"

using namespace hypercheck;

namespace {

const CheckOutcome& find_check(const VerificationReport& rep,
                               const std::string& name) {
  auto it = std::find_if(rep.checks.begin(), rep.checks.end(),
                         [&](const CheckOutcome& c) { return c.check == name; });
  REQUIRE(it != rep.checks.end());
  return *it;
}

SuiteOptions small_suite() {
  SuiteOptions opt;
  opt.pointwise_points = 10;
  opt.integral_points = 16;
  return opt;
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("every check id has a statement") {
  for (const auto& id : pointwise_check_names())
    CHECK_FALSE(check_statement(id).empty());
  for (const auto& id : integral_check_names())
    CHECK_FALSE(check_statement(id).empty());
  CHECK_THROWS_AS((void)check_statement("nonsense"), ArgumentError);
}

TEST_CASE("small sphere suite passes everything applicable") {
  auto rep = run_suite(ModelSpec::sphere(1.0, 3, 0.8), small_suite());
  CHECK(rep.biconservative);
  CHECK(rep.all_ok());
  for (const auto& c : rep.checks) {
    CAPTURE(c.check);
    CHECK(c.status != CheckStatus::Fail);
    CHECK(c.status != CheckStatus::Error);
  }
  CHECK(find_check(rep, "div_phi").status == CheckStatus::Pass);
  CHECK(find_check(rep, "simons").status == CheckStatus::Pass);
  CHECK(find_check(rep, "int_master").status == CheckStatus::Pass);
}

TEST_CASE("torus suite: universal checks pass, conditional ones skip") {
  auto rep = run_suite(ModelSpec::torus(2.0, 1.0), small_suite());
  CHECK_FALSE(rep.biconservative);
  CHECK(rep.bicons_max > 1e-3);
  CHECK(rep.all_ok());  // SKIP is not a failure
  CHECK(find_check(rep, "div_phi").status == CheckStatus::Pass);
  CHECK(find_check(rep, "div_t1").status == CheckStatus::Pass);
  CHECK(find_check(rep, "div_t2").status == CheckStatus::Pass);
  CHECK(find_check(rep, "kato").status == CheckStatus::Pass);
  CHECK(find_check(rep, "simons").status == CheckStatus::Pass);
  CHECK(find_check(rep, "stress_equiv").status == CheckStatus::Pass);
  CHECK(find_check(rep, "div_t3").status == CheckStatus::Skip);
  CHECK(find_check(rep, "pointwise_int1").status == CheckStatus::Skip);
  CHECK(find_check(rep, "int_f2A2").status == CheckStatus::Skip);
  // the skipped residuals are genuinely nonzero: the identity really fails
  CHECK(find_check(rep, "div_t3").residual_max > 1e-3);
}

TEST_CASE("single pointwise checks and their preconditions") {
  auto torus = instantiate(ModelSpec::torus(2.0, 1.0));
  Eigen::VectorXd u(2);
  u << 1.0, 2.0;
  CHECK(run_pointwise_check(torus, u, "codazzi") < 1e-9);
  CHECK(run_pointwise_check(torus, u, "gauss") < 1e-8);
  // conditional identity on a non-biconservative point: precondition throws
  CHECK_THROWS_AS((void)run_pointwise_check(torus, u, "pointwise_int1"),
                  PreconditionError);
  // negative control: with the precondition disabled the residual is large
  CHECK(run_pointwise_check(torus, u, "pointwise_int1", 4, false) > 1e-3);
  CHECK_THROWS_AS((void)run_pointwise_check(torus, u, "unknown_check"),
                  ArgumentError);
}

TEST_CASE("integral checks carry a quadrature error estimate") {
  auto chart = instantiate(ModelSpec::sphere(0.0, 2, 1.0));
  IntegralOptions opt;
  opt.points_per_axis = 20;
  auto res = run_integral_check(chart, "box_zero_t2_f", opt);
  CHECK(std::abs(res.value) < 1e-8);
  CHECK(res.error_estimate >= 0.0);
}

TEST_CASE("report JSON round-trips losslessly") {
  auto rep = run_suite(ModelSpec::product_spheres(1, 2, 0.6, 0.8),
                       small_suite());
  auto j = rep.to_json();
  auto back = VerificationReport::from_json(j);
  CHECK(back.model == rep.model);
  CHECK(back.grid == rep.grid);
  CHECK(back.biconservative == rep.biconservative);
  CHECK(back.bicons_max == rep.bicons_max);
  REQUIRE(back.checks.size() == rep.checks.size());
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    CHECK(back.checks[i].check == rep.checks[i].check);
    CHECK(back.checks[i].residual_max == rep.checks[i].residual_max);
    CHECK(back.checks[i].status == rep.checks[i].status);
  }
  CHECK(back.to_json().dump() == j.dump());
}

TEST_CASE("CSV serialization has a stable header") {
  auto rep = run_suite(ModelSpec::sphere(0.0, 2, 1.0), small_suite());
  const std::string csv = rep.to_csv();
  CHECK(csv.rfind("check,", 0) == 0);
  // one line per check plus the header
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(rep.checks.size()) + 1);
}

TEST_CASE("suite runs are deterministic across thread counts") {
  SuiteOptions a = small_suite(), b = small_suite();
  a.threads = 1;
  b.threads = 3;
  auto ra = run_suite(ModelSpec::ellipsoid({2.0, 1.0, 1.0}), a);
  auto rb = run_suite(ModelSpec::ellipsoid({2.0, 1.0, 1.0}), b);
  CHECK(ra.to_json().dump() == rb.to_json().dump());
}

TEST_CASE("status names round-trip") {
  for (auto s : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Skip,
                 CheckStatus::Error}) {
    CHECK(status_from_name(status_name(s)) == s);
  }
  CHECK_THROWS_AS((void)status_from_name("MAYBE"), ArgumentError);
}

}  // TEST_SUITE
