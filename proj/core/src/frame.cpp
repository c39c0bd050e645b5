// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/frame.hpp"

#include <algorithm>
#include <cmath>

namespace hypercheck {

namespace {

// Row-major m x m jet-matrix product.
std::vector<Jet> jet_mat_mul(const std::vector<Jet>& a,
                             const std::vector<Jet>& b, int m) {
  std::vector<Jet> r(m * m, Jet(a[0].dim(), a[0].order()));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Jet s = a[i * m + 0] * b[0 * m + j];
      for (int l = 1; l < m; ++l) s += a[i * m + l] * b[l * m + j];
      r[i * m + j] = s;
    }
  return r;
}

Jet jet_trace(const std::vector<Jet>& a, int m) {
  Jet s = a[0];
  for (int i = 1; i < m; ++i) s += a[i * m + i];
  return s;
}

// Solve the jet linear system B y = rhs by Gaussian elimination with partial
// pivoting on the constant terms (B invertible at the expansion point).
std::vector<Jet> jet_solve(std::vector<Jet> B, std::vector<Jet> rhs, int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(B[r * n + col].value()) >
          std::abs(B[piv * n + col].value()))
        piv = r;
    if (std::abs(B[piv * n + col].value()) < 1e-14)
      throw ImmersionError("singular linear system in normal computation");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(B[col * n + c], B[piv * n + c]);
      std::swap(rhs[col], rhs[piv]);
    }
    for (int r = col + 1; r < n; ++r) {
      Jet factor = B[r * n + col] / B[col * n + col];
      for (int c = col; c < n; ++c)
        B[r * n + c] -= factor * B[col * n + c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<Jet> y(n, Jet(rhs[0].dim(), rhs[0].order()));
  for (int row = n - 1; row >= 0; --row) {
    Jet s = rhs[row];
    for (int c = row + 1; c < n; ++c) s -= B[row * n + c] * y[c];
    y[row] = s / B[row * n + row];
  }
  return y;
}

}  // namespace

FramePoint::FramePoint(const ChartMap& chart, const Eigen::VectorXd& u,
                       int order)
    : space_(chart.space), m_(chart.dim()), order_(order) {
  if (order < 3 || order > kMaxJetOrder)
    throw ArgumentError("frame evaluation needs jet order in [3,4]");
  if (u.size() != m_) throw ArgumentError("chart point dimension mismatch");
  if (!chart.in_domain(u)) throw ArgumentError("chart point outside domain");

  n_ = space_.coord_dim();
  phi_ = chart.evaluate(u, order);
  if (static_cast<int>(phi_.size()) != n_)
    throw SpecError("chart evaluation returned wrong ambient dimension");
  for (const auto& j : phi_)
    if (j.dim() != m_ || j.order() != order)
      throw SpecError("chart evaluation returned wrong jet layout");

  Eigen::VectorXd p(n_);
  for (int a = 0; a < n_; ++a) p[a] = phi_[a].value();
  if (space_.c != 0.0 && !space_.validate_point(p))
    throw SpecError("chart point does not lie on the ambient model manifold");

  const int w = order - 1;   // metric order
  const int w2 = order - 2;  // shape-operator chain order

  // Tangents and induced metric.
  std::vector<Jet> tang(m_ * n_);
  for (int i = 0; i < m_; ++i)
    for (int a = 0; a < n_; ++a) tang[i * n_ + a] = phi_[a].derivative(i);

  g_.assign(m_ * m_, Jet(m_, w));
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) {
      Jet s = space_.signature(0) * (tang[i * n_ + 0] * tang[j * n_ + 0]);
      for (int a = 1; a < n_; ++a)
        s += space_.signature(a) * (tang[i * n_ + a] * tang[j * n_ + a]);
      g_[i * m_ + j] = s;
      if (i != j) g_[j * m_ + i] = s;
    }

  Eigen::MatrixXd gv(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) gv(i, j) = g_[i * m_ + j].value();
  // Relative threshold: near-pole nodes of polar charts have legitimately
  // tiny determinants, so only flag genuine rank loss.
  const double gscale = std::max(gv.diagonal().maxCoeff(), 1e-300);
  if (!(gv.determinant() > 1e-20 * std::pow(gscale, m_)))
    throw ImmersionError("degenerate induced metric (relative Gram det)");

  // Truncated inverse metric: with g = G0 + dG and X = G0^{-1} dG nilpotent,
  // g^{-1} = (sum_p (-X)^p) G0^{-1} exactly through the jet order.
  Eigen::MatrixXd g0inv = gv.inverse();
  std::vector<Jet> X(m_ * m_, Jet(m_, w));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      Jet s = g0inv(i, 0) * g_[0 * m_ + j];
      for (int l = 1; l < m_; ++l) s += g0inv(i, l) * g_[l * m_ + j];
      s.coeff_at(0) = 0.0;  // constant part of G0^{-1} g is exactly I
      X[i * m_ + j] = s;
    }
  std::vector<Jet> series(m_ * m_, Jet(m_, w));
  for (int i = 0; i < m_; ++i) series[i * m_ + i] += 1.0;
  std::vector<Jet> Xp = X;
  double sign = -1.0;
  for (int p = 1; p <= w; ++p) {
    for (int i = 0; i < m_ * m_; ++i) series[i] += sign * Xp[i];
    if (p < w) Xp = jet_mat_mul(Xp, X, m_);
    sign = -sign;
  }
  ginv_.assign(m_ * m_, Jet(m_, w));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      Jet s = series[i * m_ + 0] * g0inv(0, j);
      for (int l = 1; l < m_; ++l) s += series[i * m_ + l] * g0inv(l, j);
      ginv_[i * m_ + j] = s;
    }

  // Christoffel symbols from metric derivatives.
  std::vector<Jet> dg(m_ * m_ * m_);
  for (int k = 0; k < m_; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        dg[(k * m_ + i) * m_ + j] = g_[i * m_ + j].derivative(k);
  gamma_.assign(m_ * m_ * m_, Jet(m_, w2));
  for (int k = 0; k < m_; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = i; j < m_; ++j) {
        Jet s(m_, w2);
        for (int l = 0; l < m_; ++l) {
          Jet term = dg[(i * m_ + l) * m_ + j] + dg[(j * m_ + l) * m_ + i] -
                     dg[(l * m_ + i) * m_ + j];
          s += 0.5 * (ginv_[k * m_ + l].truncated(w2) * term);
        }
        gamma_[(k * m_ + i) * m_ + j] = s;
        if (i != j) gamma_[(k * m_ + j) * m_ + i] = s;
      }

  // Unit normal. In the flat model the normal is orthogonal (w.r.t. the model
  // signature) to the tangents, and additionally to the position vector when
  // c != 0. Solve the square system [sig*T_i; sig*phi; w0] y = e_last, where
  // w0 is the value-level normal direction oriented by a positive determinant.
  const int rows = n_ - 1;
  Eigen::MatrixXd M0(rows, n_);
  for (int i = 0; i < m_; ++i)
    for (int a = 0; a < n_; ++a)
      M0(i, a) = space_.signature(a) * tang[i * n_ + a].value();
  if (space_.c != 0.0)
    for (int a = 0; a < n_; ++a)
      M0(m_, a) = space_.signature(a) * p[a];

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M0, Eigen::ComputeFullV);
  Eigen::VectorXd w0 = svd.matrixV().col(n_ - 1);
  Eigen::MatrixXd B0(n_, n_);
  B0.topRows(rows) = M0;
  B0.row(n_ - 1) = w0.transpose();
  if (B0.determinant() < 0.0) w0 = -w0;

  std::vector<Jet> B(n_ * n_, Jet(m_, w2));
  for (int i = 0; i < m_; ++i)
    for (int a = 0; a < n_; ++a)
      B[i * n_ + a] = space_.signature(a) * tang[i * n_ + a].truncated(w2);
  if (space_.c != 0.0)
    for (int a = 0; a < n_; ++a)
      B[m_ * n_ + a] = space_.signature(a) * phi_[a].truncated(w2);
  for (int a = 0; a < n_; ++a)
    B[(n_ - 1) * n_ + a] = Jet::constant(w0[a], m_, w2);
  std::vector<Jet> rhs(n_, Jet(m_, w2));
  rhs[n_ - 1] += 1.0;
  std::vector<Jet> y = jet_solve(std::move(B), std::move(rhs), n_);

  Jet ynorm2(m_, w2);
  for (int a = 0; a < n_; ++a) ynorm2 += space_.signature(a) * (y[a] * y[a]);
  Jet inv_norm = recip(sqrt(ynorm2));
  eta_.assign(n_, Jet(m_, w2));
  for (int a = 0; a < n_; ++a)
    eta_[a] = chart.normal_sign * (y[a] * inv_norm);

  // Second fundamental form h_ij = <flat second derivative, eta> and the
  // shape operator A = g^{-1} h.
  h_.assign(m_ * m_, Jet(m_, w2));
  for (int i = 0; i < m_; ++i)
    for (int j = i; j < m_; ++j) {
      Jet d2a = tang[i * n_ + 0].derivative(j);
      Jet s = space_.signature(0) * (d2a * eta_[0]);
      for (int a = 1; a < n_; ++a)
        s += space_.signature(a) * (tang[i * n_ + a].derivative(j) * eta_[a]);
      h_[i * m_ + j] = s;
      if (i != j) h_[j * m_ + i] = s;
    }

  A_.assign(m_ * m_, Jet(m_, w2));
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      Jet s = ginv_[i * m_ + 0].truncated(w2) * h_[0 * m_ + j];
      for (int l = 1; l < m_; ++l)
        s += ginv_[i * m_ + l].truncated(w2) * h_[l * m_ + j];
      A_[i * m_ + j] = s;
    }
  A2_ = jet_mat_mul(A_, A_, m_);
  A3_ = jet_mat_mul(A2_, A_, m_);
  f_ = jet_trace(A_, m_) * (1.0 / m_);
  normA2_ = jet_trace(A2_, m_);
  traceA3_ = jet_trace(A3_, m_);

  // Value extraction.
  frame_.u = u;
  frame_.c = space_.c;
  frame_.jet_order = order;
  frame_.g = gv;
  frame_.g_inv = Eigen::MatrixXd(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      frame_.g_inv(i, j) = ginv_[i * m_ + j].value();
  frame_.gamma.assign(m_, Eigen::MatrixXd(m_, m_));
  for (int k = 0; k < m_; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        frame_.gamma[k](i, j) = gamma_[(k * m_ + i) * m_ + j].value();
  frame_.eta = Eigen::VectorXd(n_);
  for (int a = 0; a < n_; ++a) frame_.eta[a] = eta_[a].value();
  frame_.h = Eigen::MatrixXd(m_, m_);
  frame_.A = Eigen::MatrixXd(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      frame_.h(i, j) = h_[i * m_ + j].value();
      frame_.A(i, j) = A_[i * m_ + j].value();
    }
  frame_.f = f_.value();
  frame_.normA2 = normA2_.value();
  frame_.traceA3 = traceA3_.value();

  Eigen::MatrixXd h_sym = 0.5 * (frame_.h + frame_.h.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h_sym, gv);
  frame_.lambda = es.eigenvalues();

  frame_.nablaA = covariant_derivative(A_);
}

std::vector<Jet> FramePoint::identity_jets() const {
  std::vector<Jet> id(m_ * m_, Jet(m_, order_ - 2));
  for (int i = 0; i < m_; ++i) id[i * m_ + i] += 1.0;
  return id;
}

Eigen::VectorXd FramePoint::gradient(const Jet& s) const {
  Eigen::VectorXd d(m_);
  for (int j = 0; j < m_; ++j) d[j] = s.partial1(j);
  return frame_.g_inv * d;
}

Eigen::MatrixXd FramePoint::hessian(const Jet& s) const {
  if (s.order() < 2)
    throw ArgumentError("covariant Hessian needs a jet of order >= 2");
  Eigen::VectorXd d(m_);
  for (int j = 0; j < m_; ++j) d[j] = s.partial1(j);
  Eigen::MatrixXd H(m_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      double v = s.partial2(i, j);
      for (int k = 0; k < m_; ++k) v -= frame_.gamma[k](i, j) * d[k];
      H(i, j) = v;
    }
  return H;
}

double FramePoint::laplacian(const Jet& s) const {
  return (frame_.g_inv * hessian(s)).trace();
}

std::vector<Eigen::MatrixXd> FramePoint::covariant_derivative(
    const std::vector<Jet>& T) const {
  std::vector<Eigen::MatrixXd> N(m_, Eigen::MatrixXd(m_, m_));
  for (int k = 0; k < m_; ++k)
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) {
        double v = T[i * m_ + j].partial1(k);
        for (int l = 0; l < m_; ++l)
          v += frame_.gamma[i](k, l) * T[l * m_ + j].value() -
               frame_.gamma[l](k, j) * T[i * m_ + l].value();
        N[k](i, j) = v;
      }
  return N;
}

Eigen::VectorXd FramePoint::divergence(const std::vector<Jet>& T) const {
  const auto N = covariant_derivative(T);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m_);
  for (int i = 0; i < m_; ++i)
    for (int a = 0; a < m_; ++a)
      for (int b = 0; b < m_; ++b)
        v[i] += frame_.g_inv(a, b) * N[a](i, b);
  return v;
}

double FramePoint::vnorm2(const Eigen::VectorXd& v) const {
  return v.dot(frame_.g * v);
}

double FramePoint::vnorm(const Eigen::VectorXd& v) const {
  return std::sqrt(std::max(0.0, vnorm2(v)));
}

double FramePoint::contract_op_form(const Eigen::MatrixXd& op,
                                    const Eigen::MatrixXd& form) const {
  return (op * frame_.g_inv * form).trace();
}

double FramePoint::nabla_norm2(const std::vector<Eigen::MatrixXd>& N) const {
  // Full contraction: lower the operator index with g, raise both derivative
  // and argument slots with g^{-1}.
  double s = 0.0;
  for (int k = 0; k < m_; ++k)
    for (int kk = 0; kk < m_; ++kk) {
      const double gk = frame_.g_inv(k, kk);
      if (gk == 0.0) continue;
      Eigen::MatrixXd prod =
          N[k].transpose() * frame_.g * N[kk] * frame_.g_inv;
      s += gk * prod.trace();
    }
  return s;
}

std::vector<double> FramePoint::intrinsic_curvature() const {
  // R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
  //             + Gamma^l_{is} Gamma^s_{jk} - Gamma^l_{js} Gamma^s_{ik}.
  std::vector<double> R(m_ * m_ * m_ * m_, 0.0);
  auto dgamma = [&](int i, int l, int j, int k) {
    return gamma_[(l * m_ + j) * m_ + k].partial1(i);
  };
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j)
      for (int k = 0; k < m_; ++k)
        for (int l = 0; l < m_; ++l) {
          double v = dgamma(i, l, j, k) - dgamma(j, l, i, k);
          for (int s = 0; s < m_; ++s)
            v += frame_.gamma[l](i, s) * frame_.gamma[s](j, k) -
                 frame_.gamma[l](j, s) * frame_.gamma[s](i, k);
          R[((i * m_ + j) * m_ + k) * m_ + l] = v;
        }
  return R;
}

double FramePoint::intrinsic_sectional(const std::vector<double>& riem, int i,
                                       int j) const {
  double s = 0.0;
  for (int l = 0; l < m_; ++l)
    s += frame_.g(l, i) * riem[((i * m_ + j) * m_ + j) * m_ + l];
  return s;
}

double FramePoint::intrinsic_scalar(const std::vector<double>& riem) const {
  double s = 0.0;
  for (int j = 0; j < m_; ++j)
    for (int k = 0; k < m_; ++k) {
      double ric = 0.0;
      for (int i = 0; i < m_; ++i)
        ric += riem[((i * m_ + j) * m_ + k) * m_ + i];
      s += frame_.g_inv(j, k) * ric;
    }
  return s;
}

GeometryFrame frame_at(const ChartMap& chart, const Eigen::VectorXd& u,
                       int order) {
  return FramePoint(chart, u, order).frame();
}

std::vector<std::pair<double, int>> principal_decomposition(
    const GeometryFrame& frame, double cluster_tol) {
  if (cluster_tol < 0.0)
    cluster_tol = 1e-6 * (1.0 + std::sqrt(std::max(0.0, frame.normA2)));
  std::vector<std::pair<double, int>> clusters;
  const auto& lam = frame.lambda;
  int start = 0;
  for (int i = 1; i <= lam.size(); ++i) {
    if (i == lam.size() || lam[i] - lam[start] > cluster_tol) {
      double mean = 0.0;
      for (int k = start; k < i; ++k) mean += lam[k];
      clusters.emplace_back(mean / (i - start), i - start);
      start = i;
    }
  }
  return clusters;
}

}  // namespace hypercheck
