// SPDX-License-Identifier: Apache-2.0
//
// The named (1,1) tensor family of the verification suite, built from a
// geometric frame:
//   S2  = -(m^2/2) f^2 Id + 2 m f A      (stress-bienergy tensor)
//   T1  = (1/2) scal Id - Ric            (contracted-Bianchi conserved)
//   T2  = m f Id - A                     (Codazzi-trace conserved)
//   T3  = f^2 A                          (conserved exactly when the
//                                         biconservativity equation holds)
//   PHI = psi3 Id - psi2 A + m f A^2 - A^3   (conserved on every
//                                         hypersurface in a space form)
// plus the biconservativity residual A(grad f) + (m/2) f grad f and the
// pointwise equivalence f * Div S2 = m * Div(f^2 A).
#pragma once

#include <Eigen/Dense>

#include "hypercheck/fields.hpp"

namespace hypercheck {

struct PsiCoefficients {
  double psi2 = 0.0;  // (1/2)(m^2 f^2 - |A|^2)
  double psi3 = 0.0;  // (1/6) m^3 f^3 + (1/3) tr A^3 - (1/2) m f |A|^2

  static PsiCoefficients from(int m, double f, double normA2, double traceA3);
};

enum class ConservedTensorId { S2, T1, T2, T3, PHI };

ConservedTensorId tensor_id_from_name(const std::string& name);
std::string tensor_name(ConservedTensorId id);

/// Coordinate-frame matrix of the named tensor at a frame (value level).
Eigen::MatrixXd build_tensor(const GeometryFrame& frame, ConservedTensorId id);

/// Jet-level fields for divergence/operator work.
TensorField11 tensor_f2A();
TensorField11 tensor_S2();
TensorField11 tensor_T1();
TensorField11 tensor_T2();
TensorField11 tensor_PHI();
TensorField11 tensor_field(ConservedTensorId id);

/// A(grad f) + (m/2) f grad f in the coordinate frame; zero iff the
/// biconservativity equation holds at the point.
Eigen::VectorXd biconservativity_residual(const FramePoint& fp);
Eigen::VectorXd biconservativity_residual(const ChartMap& chart,
                                          const Eigen::VectorXd& u,
                                          int order = 4);

/// g-norm of f * Div S2 - m * Div(f^2 A); vanishes identically on every
/// hypersurface, making the equivalence of the two conservation laws
/// testable pointwise.
double stress_equivalence_residual(const FramePoint& fp);
double stress_equivalence_residual(const ChartMap& chart,
                                   const Eigen::VectorXd& u, int order = 4);

}  // namespace hypercheck
