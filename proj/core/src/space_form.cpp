// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/space_form.hpp"

#include <cmath>

namespace hypercheck {

AmbientSpace::AmbientSpace(double curvature, int hypersurface_dim)
    : c(curvature), m(hypersurface_dim) {
  if (c != -1.0 && c != 0.0 && c != 1.0)
    throw ArgumentError("curvature constant must be -1, 0, or +1");
  if (m < 2) throw ArgumentError("hypersurface dimension must be >= 2");
}

double AmbientSpace::inner(const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v) const {
  if (u.size() != coord_dim() || v.size() != coord_dim())
    throw ArgumentError("ambient vector length mismatch");
  double s = u.dot(v);
  if (c < 0.0) s -= 2.0 * u[0] * v[0];
  return s;
}

bool AmbientSpace::validate_point(const Eigen::VectorXd& p, double tol) const {
  if (p.size() != coord_dim())
    throw ArgumentError("ambient vector length mismatch");
  if (c == 0.0) return true;
  const double q = inner(p, p);
  if (c > 0.0) return std::abs(q - 1.0) <= tol;
  return std::abs(q + 1.0) <= tol && p[0] > 0.0;
}

}  // namespace hypercheck
