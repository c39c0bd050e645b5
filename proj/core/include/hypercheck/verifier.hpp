// SPDX-License-Identifier: Apache-2.0
//
// The check registry: every identity of the engine as a named residual,
// pointwise or integral, executed over grids and aggregated into a
// VerificationReport. Residuals of identities that only hold on
// biconservative hypersurfaces are still measured everywhere, but their
// status is SKIP on models failing the global biconservativity test.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypercheck/catalog.hpp"
#include "hypercheck/quadrature.hpp"
#include "hypercheck/tensors.hpp"

#include <json.hpp>

namespace hypercheck {

enum class CheckStatus { Pass, Fail, Skip, Error };

std::string status_name(CheckStatus s);
CheckStatus status_from_name(const std::string& name);

struct CheckOutcome {
  std::string check;
  std::string statement;  // the identity in plain math text
  double residual_max = 0.0;
  double residual_l2 = 0.0;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
};

struct Tolerances {
  double pointwise = 1e-6;      // order-3 analytic residuals
  double codazzi = 1e-7;        // total-symmetry and trace identities
  double fourth_order = 1e-5;   // checks needing fourth-order data
  double integral_floor = 1e-5; // integral tolerance = max(floor, 3*err)
  /// Max grid residual below which a model counts as biconservative.
  double bicons_threshold = 1e-8;
};

struct SuiteOptions {
  int pointwise_points = 12;  // per-axis resolution for pointwise checks
  int integral_points = 32;   // per-axis resolution for integral checks
  /// Per-axis overrides; used when non-empty (size = chart dimension).
  std::vector<int> pointwise_axis_points;
  std::vector<int> integral_axis_points;
  int jet_order = 4;
  int threads = 1;
  bool run_pointwise = true;
  bool run_integrals = true;
  Tolerances tol;
};

struct VerificationReport {
  std::string model;
  std::string grid;
  int jet_order = 4;
  double bicons_max = 0.0;     // max biconservativity residual over the grid
  bool biconservative = false;
  std::vector<std::string> conventions;
  std::vector<CheckOutcome> checks;

  bool all_ok() const;  // no FAIL and no ERROR
  nlohmann::ordered_json to_json() const;
  static VerificationReport from_json(const nlohmann::ordered_json& j);
  std::string to_csv() const;
};

std::vector<std::string> pointwise_check_names();
std::vector<std::string> integral_check_names();

/// Statement text of a check (throws ArgumentError on unknown names).
std::string check_statement(const std::string& id);

/// Residual of one pointwise check at one chart point. Checks whose identity
/// holds only on biconservative hypersurfaces throw PreconditionError when
/// the biconservativity residual at u exceeds the threshold, unless
/// enforce_precondition is false (negative-control mode).
double run_pointwise_check(const ChartMap& chart, const Eigen::VectorXd& u,
                           const std::string& id, int order = 4,
                           bool enforce_precondition = true,
                           double bicons_threshold = 1e-8);

/// Residual of one integral check (|integral that must vanish|) together
/// with the quadrature error estimate.
IntegralResult run_integral_check(const ChartMap& chart, const std::string& id,
                                  const IntegralOptions& opt = {});

/// Executes all applicable checks over the grids and aggregates residuals.
VerificationReport run_suite(const ModelSpec& spec, const ChartMap& chart,
                             const SuiteOptions& opt = {});
VerificationReport run_suite(const ModelSpec& spec, const SuiteOptions& opt = {});

}  // namespace hypercheck
