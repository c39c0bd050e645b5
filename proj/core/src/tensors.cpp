// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/tensors.hpp"

namespace hypercheck {

PsiCoefficients PsiCoefficients::from(int m, double f, double normA2,
                                      double traceA3) {
  PsiCoefficients p;
  p.psi2 = 0.5 * (m * m * f * f - normA2);
  p.psi3 = (1.0 / 6.0) * m * m * m * f * f * f + traceA3 / 3.0 -
           0.5 * m * f * normA2;
  return p;
}

ConservedTensorId tensor_id_from_name(const std::string& name) {
  if (name == "s2") return ConservedTensorId::S2;
  if (name == "t1") return ConservedTensorId::T1;
  if (name == "t2") return ConservedTensorId::T2;
  if (name == "t3") return ConservedTensorId::T3;
  if (name == "phi") return ConservedTensorId::PHI;
  throw ArgumentError("unknown tensor id '" + name +
                      "' (valid: s2, t1, t2, t3, phi)");
}

std::string tensor_name(ConservedTensorId id) {
  switch (id) {
    case ConservedTensorId::S2:
      return "s2";
    case ConservedTensorId::T1:
      return "t1";
    case ConservedTensorId::T2:
      return "t2";
    case ConservedTensorId::T3:
      return "t3";
    case ConservedTensorId::PHI:
      return "phi";
  }
  throw ArgumentError("unknown tensor id");
}

Eigen::MatrixXd build_tensor(const GeometryFrame& frame,
                             ConservedTensorId id) {
  const int m = frame.m();
  const double f = frame.f;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m, m);
  const Eigen::MatrixXd& A = frame.A;
  switch (id) {
    case ConservedTensorId::S2:
      return -0.5 * m * m * f * f * I + 2.0 * m * f * A;
    case ConservedTensorId::T1: {
      // Ric from the contracted Gauss equation; scal = trace Ric.
      Eigen::MatrixXd ric =
          (m - 1) * frame.c * I + m * f * A - (A * A).eval();
      const double scal =
          m * (m - 1) * frame.c + m * m * f * f - frame.normA2;
      return 0.5 * scal * I - ric;
    }
    case ConservedTensorId::T2:
      return m * f * I - A;
    case ConservedTensorId::T3:
      return f * f * A;
    case ConservedTensorId::PHI: {
      const auto psi =
          PsiCoefficients::from(m, f, frame.normA2, frame.traceA3);
      Eigen::MatrixXd A2 = A * A;
      return psi.psi3 * I - psi.psi2 * A + m * f * A2 - A2 * A;
    }
  }
  throw ArgumentError("unknown tensor id");
}

namespace {

std::vector<Jet> scaled_identity(const FramePoint& fp, const Jet& s) {
  const int m = fp.m();
  std::vector<Jet> r(m * m, Jet(s.dim(), s.order()));
  for (int i = 0; i < m; ++i) r[i * m + i] = s;
  return r;
}

std::vector<Jet> axpy(std::vector<Jet> acc, const Jet& s,
                      const std::vector<Jet>& T) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * T[i];
  return acc;
}

}  // namespace

TensorField11 tensor_f2A() {
  return {"f2A", [](const FramePoint& fp) {
            const Jet& f = fp.mean_curvature();
            Jet f2 = f * f;
            std::vector<Jet> r = fp.shape_op();
            for (auto& e : r) e = f2 * e;
            return r;
          }};
}

TensorField11 tensor_S2() {
  return {"s2", [](const FramePoint& fp) {
            const int m = fp.m();
            const Jet& f = fp.mean_curvature();
            std::vector<Jet> r =
                scaled_identity(fp, -0.5 * m * m * (f * f));
            return axpy(std::move(r), 2.0 * m * f, fp.shape_op());
          }};
}

TensorField11 tensor_T1() {
  return {"t1", [](const FramePoint& fp) {
            const int m = fp.m();
            const double c = fp.curvature();
            const Jet& f = fp.mean_curvature();
            // (1/2) scal Id - Ric with Ric = (m-1)c Id + m f A - A^2.
            Jet half_scal = 0.5 * (m * m * (f * f) - fp.norm_A2());
            half_scal += 0.5 * m * (m - 1) * c;
            std::vector<Jet> r = scaled_identity(fp, half_scal);
            const int mm = m * m;
            for (int i = 0; i < m; ++i)
              r[i * m + i] -= (m - 1) * c;
            Jet mf = static_cast<double>(m) * f;
            for (int i = 0; i < mm; ++i) {
              r[i] -= mf * fp.shape_op()[i];
              r[i] += fp.shape_op2()[i];
            }
            return r;
          }};
}

TensorField11 tensor_T2() {
  return {"t2", [](const FramePoint& fp) {
            const int m = fp.m();
            Jet mf = static_cast<double>(m) * fp.mean_curvature();
            std::vector<Jet> r = scaled_identity(fp, mf);
            for (std::size_t i = 0; i < r.size(); ++i)
              r[i] -= fp.shape_op()[i];
            return r;
          }};
}

TensorField11 tensor_PHI() {
  return {"phi", [](const FramePoint& fp) {
            const int m = fp.m();
            const Jet& f = fp.mean_curvature();
            Jet psi2 = 0.5 * (m * m * (f * f) - fp.norm_A2());
            Jet psi3 = (m * m * m / 6.0) * (f * f * f) +
                       (1.0 / 3.0) * fp.trace_A3() -
                       0.5 * m * (f * fp.norm_A2());
            std::vector<Jet> r = scaled_identity(fp, psi3);
            r = axpy(std::move(r), -1.0 * psi2, fp.shape_op());
            r = axpy(std::move(r), static_cast<double>(m) * f,
                     fp.shape_op2());
            for (std::size_t i = 0; i < r.size(); ++i)
              r[i] -= fp.shape_op3()[i];
            return r;
          }};
}

TensorField11 tensor_field(ConservedTensorId id) {
  switch (id) {
    case ConservedTensorId::S2:
      return tensor_S2();
    case ConservedTensorId::T1:
      return tensor_T1();
    case ConservedTensorId::T2:
      return tensor_T2();
    case ConservedTensorId::T3:
      return tensor_f2A();
    case ConservedTensorId::PHI:
      return tensor_PHI();
  }
  throw ArgumentError("unknown tensor id");
}

Eigen::VectorXd biconservativity_residual(const FramePoint& fp) {
  const auto& fr = fp.frame();
  Eigen::VectorXd grad_f = fp.gradient(fp.mean_curvature());
  return fr.A * grad_f + 0.5 * fp.m() * fr.f * grad_f;
}

Eigen::VectorXd biconservativity_residual(const ChartMap& chart,
                                          const Eigen::VectorXd& u,
                                          int order) {
  return biconservativity_residual(FramePoint(chart, u, order));
}

double stress_equivalence_residual(const FramePoint& fp) {
  Eigen::VectorXd div_s2 = divergence_11(fp, tensor_S2());
  Eigen::VectorXd div_f2a = divergence_11(fp, tensor_f2A());
  return fp.vnorm(fp.frame().f * div_s2 - fp.m() * div_f2a);
}

double stress_equivalence_residual(const ChartMap& chart,
                                   const Eigen::VectorXd& u, int order) {
  return stress_equivalence_residual(FramePoint(chart, u, order));
}

}  // namespace hypercheck
