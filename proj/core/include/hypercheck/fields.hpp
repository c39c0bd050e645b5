// SPDX-License-Identifier: Apache-2.0
//
// Covariant calculus on scalar and (1,1) tensor fields over a FramePoint:
// gradients, Hessians, Laplacians, divergences, and the trace-pairing
// operator gamma -> <Phi, Hess gamma> for a chosen (1,1) field Phi.
// Sign convention: Laplacian = +trace of the covariant Hessian.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "hypercheck/frame.hpp"

namespace hypercheck {

/// A scalar field evaluable as a jet at any frame point. Named factories
/// cover the cataloged tags; arbitrary combinations can be built directly.
struct ScalarField {
  std::string name;
  std::function<Jet(const FramePoint&)> eval;
};

ScalarField field_f();
ScalarField field_f_squared();
ScalarField field_normA2();
ScalarField field_traceA3();
/// Restriction of the ambient coordinate function x_a to the hypersurface
/// (globally smooth on compact models, unlike chart angles).
ScalarField field_ambient_coordinate(int a);

struct ScalarDerivatives {
  double value = 0.0;
  Eigen::VectorXd grad;   // index raised by g_inv
  Eigen::MatrixXd hess;   // covariant Hessian (0,2)
  double laplacian = 0.0;
};

ScalarDerivatives scalar_derivatives(const FramePoint& fp,
                                     const ScalarField& field);
ScalarDerivatives scalar_derivatives(const ChartMap& chart,
                                     const Eigen::VectorXd& u,
                                     const ScalarField& field, int order = 4);

/// A (1,1) tensor field evaluable as m*m jets (row-major, T[i*m+j] = T^i_j).
struct TensorField11 {
  std::string name;
  std::function<std::vector<Jet>(const FramePoint&)> eval;
};

TensorField11 tensor_identity();
TensorField11 tensor_A();
TensorField11 tensor_A2();
TensorField11 tensor_A3();

/// Values of a (1,1) jet field at the point.
Eigen::MatrixXd tensor_values(const FramePoint& fp, const TensorField11& t);

/// trace over the derivative slot of the covariant derivative, index raised.
Eigen::VectorXd divergence_11(const FramePoint& fp, const TensorField11& t);
Eigen::VectorXd divergence_11(const ChartMap& chart, const Eigen::VectorXd& u,
                              const TensorField11& t, int order = 4);

/// <Phi, Hess gamma> = Phi^i_j g^{jk} Hess_{ki} gamma.
double cheng_yau_apply(const FramePoint& fp, const TensorField11& phi,
                       const ScalarField& gamma);
double cheng_yau_apply(const ChartMap& chart, const Eigen::VectorXd& u,
                       const TensorField11& phi, const ScalarField& gamma,
                       int order = 4);

}  // namespace hypercheck
