// SPDX-License-Identifier: Apache-2.0
//
// Deterministic tensor-product quadrature over a chart: Gauss-Legendre on
// bounded axes, trapezoid on periodic ones, with closed-form corrections for
// excised polar caps. Results are bit-reproducible: summation order is fixed
// and independent of the thread count.
#pragma once

#include <functional>
#include <vector>

#include "hypercheck/frame.hpp"

namespace hypercheck {

/// Nodes and weights on [-1, 1] (Golub-Welsch values via Newton on P_n).
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

struct QuadratureGrid {
  std::vector<std::vector<double>> nodes;    // per axis
  std::vector<std::vector<double>> weights;  // per axis, includes jacobian

  std::size_t total_points() const;
};

QuadratureGrid build_grid(const ChartMap& chart, int points_per_axis);
QuadratureGrid build_grid(const ChartMap& chart,
                          const std::vector<int>& points_per_axis);

using FrameIntegrand = std::function<double(const FramePoint&)>;

struct IntegralOptions {
  int points_per_axis = 48;
  /// Per-axis resolutions; overrides points_per_axis when non-empty (size
  /// must then match the chart dimension).
  std::vector<int> axis_points;
  int jet_order = 4;
  int threads = 1;
  /// Re-integrate at half resolution and report the difference.
  bool error_estimate = true;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Fills `values` (pre-sized) with every integrand at the point, so expensive
/// shared quantities are computed once per node.
using BatchIntegrand =
    std::function<void(const FramePoint&, std::vector<double>& values)>;

/// Integrate `count` scalar integrands in one pass over the grid. Each value
/// includes the cap-defect correction: excised measure times the
/// boundary-slice mean of the integrand.
std::vector<IntegralResult> integrate_batch(const ChartMap& chart,
                                            std::size_t count,
                                            const BatchIntegrand& f,
                                            const IntegralOptions& opt = {});

std::vector<IntegralResult> integrate_many(const ChartMap& chart,
                                           const std::vector<FrameIntegrand>& fs,
                                           const IntegralOptions& opt = {});

IntegralResult integrate(const ChartMap& chart, const FrameIntegrand& f,
                         const IntegralOptions& opt = {});

/// Riemannian volume of the chart (integral of 1).
IntegralResult chart_volume(const ChartMap& chart,
                            const IntegralOptions& opt = {});

}  // namespace hypercheck
