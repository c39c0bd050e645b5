// SPDX-License-Identifier: Apache-2.0
//
// Pointwise hypersurface geometry. FramePoint evaluates, at one chart point,
// the full jet-level frame (metric, Christoffel symbols, unit normal, second
// fundamental form, shape operator and its traces), and GeometryFrame holds
// the extracted values. The ambient space form is always a flat model, so the
// Gauss formula reduces to flat differentiation plus projection.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hypercheck/chart.hpp"

namespace hypercheck {

struct GeometryFrame {
  Eigen::VectorXd u;
  Eigen::MatrixXd g, g_inv;
  std::vector<Eigen::MatrixXd> gamma;  // gamma[k](i,j) = Gamma^k_{ij}
  Eigen::VectorXd eta;                 // unit normal in the flat model
  Eigen::MatrixXd h;                   // second fundamental form (0,2)
  Eigen::MatrixXd A;                   // shape operator A^i_j
  double f = 0.0;                      // mean curvature trace(A)/m
  double normA2 = 0.0;                 // |A|^2 = trace A^2
  double traceA3 = 0.0;                // trace A^3
  Eigen::VectorXd lambda;              // principal curvatures, ascending
  std::vector<Eigen::MatrixXd> nablaA;  // nablaA[k](i,j) = (nabla A)^i_{kj}
  double c = 0.0;                       // ambient curvature constant
  int jet_order = 0;

  int m() const { return static_cast<int>(g.rows()); }
};

/// All jet-level geometric data of a hypersurface at one chart point.
/// Construction needs jet order >= 3; fourth-order-dependent consumers
/// (Hessians of f, |A|^2) need order 4.
class FramePoint {
 public:
  FramePoint(const ChartMap& chart, const Eigen::VectorXd& u, int order);

  const GeometryFrame& frame() const { return frame_; }
  int m() const { return m_; }
  int ambient_dim() const { return n_; }
  int order() const { return order_; }
  double curvature() const { return space_.c; }
  const AmbientSpace& space() const { return space_; }

  // Jet accessors. Orders: position k, metric k-1, everything downstream k-2.
  const Jet& position(int a) const { return phi_[a]; }
  const Jet& metric(int i, int j) const { return g_[i * m_ + j]; }
  const Jet& metric_inv(int i, int j) const { return ginv_[i * m_ + j]; }
  const Jet& christoffel(int k, int i, int j) const {
    return gamma_[(k * m_ + i) * m_ + j];
  }
  const Jet& second_fund(int i, int j) const { return h_[i * m_ + j]; }
  const Jet& shape(int i, int j) const { return A_[i * m_ + j]; }
  const std::vector<Jet>& shape_op() const { return A_; }
  const std::vector<Jet>& shape_op2() const { return A2_; }
  const std::vector<Jet>& shape_op3() const { return A3_; }
  const Jet& mean_curvature() const { return f_; }
  const Jet& norm_A2() const { return normA2_; }
  const Jet& trace_A3() const { return traceA3_; }
  const Jet& normal(int a) const { return eta_[a]; }
  /// Zero-order identity-matrix jets matching the downstream layout.
  std::vector<Jet> identity_jets() const;

  // Value-level covariant calculus on scalar jets at this point.
  Eigen::VectorXd gradient(const Jet& s) const;  // index raised by g_inv
  Eigen::MatrixXd hessian(const Jet& s) const;   // covariant Hessian (0,2)
  double laplacian(const Jet& s) const;          // +trace of the Hessian

  /// Divergence of a (1,1) tensor given as m*m jets (row-major T[i*m+j] =
  /// T^i_j, order >= 1): trace over the derivative slot, index raised.
  Eigen::VectorXd divergence(const std::vector<Jet>& T) const;
  /// Covariant derivative values (nabla T)^i_{kj} of a (1,1) jet tensor.
  std::vector<Eigen::MatrixXd> covariant_derivative(
      const std::vector<Jet>& T) const;

  double vnorm2(const Eigen::VectorXd& v) const;  // g-norm^2, upper index
  double vnorm(const Eigen::VectorXd& v) const;
  /// Phi^i_j g^{jk} H_{ki} for a (1,1) operator and a (0,2) bilinear form.
  double contract_op_form(const Eigen::MatrixXd& op,
                          const Eigen::MatrixXd& form) const;
  /// Full g-contraction |nabla T|^2 of a (1,2) value tensor N[k](i,j).
  double nabla_norm2(const std::vector<Eigen::MatrixXd>& N) const;

  /// Intrinsic curvature from the Christoffel jets:
  /// riem[l](k; i,j) packed as R[((i*m+j)*m+k)*m+l] = R^l_{kij} with
  /// R(d_i, d_j) d_k = R^l_{kij} d_l.
  std::vector<double> intrinsic_curvature() const;
  /// <R(d_i,d_j)d_j, d_i> from intrinsic data.
  double intrinsic_sectional(const std::vector<double>& riem, int i,
                             int j) const;
  /// Intrinsic scalar curvature g^{jk} Ric_{jk}.
  double intrinsic_scalar(const std::vector<double>& riem) const;

 private:
  AmbientSpace space_;
  int m_ = 0, n_ = 0, order_ = 0;
  std::vector<Jet> phi_, g_, ginv_, gamma_, h_, A_, A2_, A3_, eta_;
  Jet f_, normA2_, traceA3_;
  GeometryFrame frame_;
};

GeometryFrame frame_at(const ChartMap& chart, const Eigen::VectorXd& u,
                       int order);

/// Eigenvalues of the shape operator grouped into multiplicity clusters whose
/// internal spread is at most cluster_tol (default 1e-6*(1+|A|)).
std::vector<std::pair<double, int>> principal_decomposition(
    const GeometryFrame& frame, double cluster_tol = -1.0);

/// Sectional curvature R_ijij = c + li*lj in the principal orthonormal frame.
inline double sectional_principal(double c, double li, double lj) {
  return c + li * lj;
}

}  // namespace hypercheck
