// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/fields.hpp"

namespace hypercheck {

ScalarField field_f() {
  return {"f", [](const FramePoint& fp) { return fp.mean_curvature(); }};
}

ScalarField field_f_squared() {
  return {"f_squared", [](const FramePoint& fp) {
            const Jet& f = fp.mean_curvature();
            return f * f;
          }};
}

ScalarField field_normA2() {
  return {"normA2", [](const FramePoint& fp) { return fp.norm_A2(); }};
}

ScalarField field_traceA3() {
  return {"traceA3", [](const FramePoint& fp) { return fp.trace_A3(); }};
}

ScalarField field_ambient_coordinate(int a) {
  return {"x" + std::to_string(a), [a](const FramePoint& fp) {
            if (a < 0 || a >= fp.ambient_dim())
              throw ArgumentError("ambient coordinate index out of range");
            return fp.position(a);
          }};
}

ScalarDerivatives scalar_derivatives(const FramePoint& fp,
                                     const ScalarField& field) {
  Jet s = field.eval(fp);
  ScalarDerivatives d;
  d.value = s.value();
  d.grad = fp.gradient(s);
  d.hess = fp.hessian(s);
  d.laplacian = (fp.frame().g_inv * d.hess).trace();
  return d;
}

ScalarDerivatives scalar_derivatives(const ChartMap& chart,
                                     const Eigen::VectorXd& u,
                                     const ScalarField& field, int order) {
  return scalar_derivatives(FramePoint(chart, u, order), field);
}

TensorField11 tensor_identity() {
  return {"identity",
          [](const FramePoint& fp) { return fp.identity_jets(); }};
}

TensorField11 tensor_A() {
  return {"A", [](const FramePoint& fp) { return fp.shape_op(); }};
}

TensorField11 tensor_A2() {
  return {"A2", [](const FramePoint& fp) { return fp.shape_op2(); }};
}

TensorField11 tensor_A3() {
  return {"A3", [](const FramePoint& fp) { return fp.shape_op3(); }};
}

Eigen::MatrixXd tensor_values(const FramePoint& fp, const TensorField11& t) {
  const auto T = t.eval(fp);
  const int m = fp.m();
  Eigen::MatrixXd M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) M(i, j) = T[i * m + j].value();
  return M;
}

Eigen::VectorXd divergence_11(const FramePoint& fp, const TensorField11& t) {
  return fp.divergence(t.eval(fp));
}

Eigen::VectorXd divergence_11(const ChartMap& chart, const Eigen::VectorXd& u,
                              const TensorField11& t, int order) {
  return divergence_11(FramePoint(chart, u, order), t);
}

double cheng_yau_apply(const FramePoint& fp, const TensorField11& phi,
                       const ScalarField& gamma) {
  Eigen::MatrixXd hess = fp.hessian(gamma.eval(fp));
  return fp.contract_op_form(tensor_values(fp, phi), hess);
}

double cheng_yau_apply(const ChartMap& chart, const Eigen::VectorXd& u,
                       const TensorField11& phi, const ScalarField& gamma,
                       int order) {
  return cheng_yau_apply(FramePoint(chart, u, order), phi, gamma);
}

}  // namespace hypercheck
