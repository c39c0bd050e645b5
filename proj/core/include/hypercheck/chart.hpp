// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "hypercheck/jet.hpp"
#include "hypercheck/space_form.hpp"

namespace hypercheck {

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
  /// Closed-form measure of the excised polar caps attributed to this axis
  /// (both ends combined); zero for axes without excision.
  double cap_defect = 0.0;

  double length() const { return hi - lo; }
};

/// A single-chart parametric hypersurface u in R^m -> N^{m+1}(c), evaluated
/// through jets so every derivative the geometry pipeline needs is analytic.
struct ChartMap {
  AmbientSpace space;
  std::vector<AxisSpec> axes;
  /// One jet per ambient coordinate, each of the requested order and dim m.
  std::function<std::vector<Jet>(const Eigen::VectorXd&, int)> evaluate;
  /// Global orientation factor for the unit normal; fixed per model so the
  /// sign never gets re-chosen per point.
  double normal_sign = 1.0;

  int dim() const { return static_cast<int>(axes.size()); }

  bool in_domain(const Eigen::VectorXd& u, double slack = 1e-12) const {
    if (u.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
      if (axes[i].periodic) continue;
      if (u[i] < axes[i].lo - slack || u[i] > axes[i].hi + slack) return false;
    }
    return true;
  }

  /// Point at fractional position `t` along every axis.
  Eigen::VectorXd point_at_fraction(double t) const {
    Eigen::VectorXd u(dim());
    for (int i = 0; i < dim(); ++i)
      u[i] = axes[i].lo + t * (axes[i].hi - axes[i].lo);
    return u;
  }
};

}  // namespace hypercheck
