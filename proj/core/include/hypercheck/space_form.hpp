// SPDX-License-Identifier: Apache-2.0
//
// The ambient space form N^{m+1}(c), c in {-1, 0, +1}, realized by its flat
// model: R^{m+1} for c = 0, the unit sphere in R^{m+2} for c = 1, and the
// upper sheet of the hyperboloid <x,x> = -1 in Minkowski R^{m+2}_1 for c = -1.
#pragma once

#include <Eigen/Dense>

#include "hypercheck/errors.hpp"

namespace hypercheck {

struct AmbientSpace {
  double c = 0.0;  // curvature constant, in {-1, 0, +1}
  int m = 2;       // hypersurface dimension, >= 2

  AmbientSpace() = default;
  AmbientSpace(double curvature, int hypersurface_dim);

  /// Coordinate dimension of the flat model.
  int coord_dim() const { return c == 0.0 ? m + 1 : m + 2; }
  /// Signature of coordinate a: -1 for the Minkowski time axis, else +1.
  double signature(int a) const { return (c < 0.0 && a == 0) ? -1.0 : 1.0; }

  /// Metric of the flat model: Euclidean dot product for c in {0,1},
  /// Minkowski product -u0 v0 + sum u_i v_i for c = -1.
  double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  /// True iff p lies on the model manifold within `tol`.
  bool validate_point(const Eigen::VectorXd& p, double tol = 1e-10) const;
};

}  // namespace hypercheck
