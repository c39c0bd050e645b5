// SPDX-License-Identifier: Apache-2.0
//
// Truncated multivariate Taylor arithmetic ("jets") of order <= 4 in up to
// 8 variables. A jet stores the Taylor coefficients f_alpha = d^alpha f / alpha!
// of a function at a point, densely indexed by multi-indices in graded-lex
// order. All elementary operations propagate coefficients exactly through the
// stated order, so chart derivatives downstream are analytic, not
// finite-differenced.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hypercheck/errors.hpp"

namespace hypercheck {

inline constexpr int kMaxJetOrder = 4;
inline constexpr int kMaxJetDim = 8;

using MultiIndex = std::array<std::uint8_t, kMaxJetDim>;

inline int degree(const MultiIndex& a) {
  int d = 0;
  for (auto v : a) d += v;
  return d;
}

/// Shared per-(dim, order) layout: the multi-index enumeration, the reverse
/// lookup, and the precomputed truncated-convolution table. Cached globally.
class JetLayout {
 public:
  struct MulEntry {
    std::uint32_t a, b, dst;
  };

  static const JetLayout& get(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& index(std::size_t i) const { return indices_[i]; }
  /// Position of a multi-index in the coefficient array, or -1 if its degree
  /// exceeds the order.
  int position(const MultiIndex& a) const;
  const std::vector<MulEntry>& mul_table() const { return mul_table_; }

 private:
  JetLayout(int dim, int order);

  int dim_, order_;
  std::vector<MultiIndex> indices_;
  std::vector<int> lookup_;  // dense, keyed by packed index
  std::vector<MulEntry> mul_table_;

  int pack(const MultiIndex& a) const;
};

class Jet {
 public:
  Jet() = default;
  /// Zero jet.
  Jet(int dim, int order);

  static Jet constant(double value, int dim, int order);
  /// Jet of the coordinate function u_i at the point: value plus unit
  /// first-order coefficient in slot i.
  static Jet variable(int i, double value, int dim, int order);

  int dim() const { return layout_ ? layout_->dim() : 0; }
  int order() const { return layout_ ? layout_->order() : 0; }
  const JetLayout& layout() const { return *layout_; }

  double value() const { return c_[0]; }
  double coeff(const MultiIndex& a) const;
  double& coeff_at(std::size_t i) { return c_[i]; }
  double coeff_at(std::size_t i) const { return c_[i]; }
  /// d^alpha f / du^alpha = alpha! * coeff(alpha). Throws if |alpha| > order.
  double partial(const MultiIndex& a) const;
  double partial1(int i) const;         // first partial
  double partial2(int i, int j) const;  // second partial

  /// Jet of df/du_i, one order lower.
  Jet derivative(int i) const;
  Jet truncated(int new_order) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(double s);

  std::span<const double> coeffs() const { return c_; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

 private:
  const JetLayout* layout_ = nullptr;
  std::vector<double> c_;

  void check_same(const Jet& o) const;
};

Jet sin(const Jet& g);
Jet cos(const Jet& g);
Jet exp(const Jet& g);
Jet sqrt(const Jet& g);
Jet recip(const Jet& g);
/// Integer power by repeated truncated multiplication; valid for zero or
/// negative base values when n >= 0.
Jet pow_int(const Jet& g, int n);

/// Composition with a univariate analytic function given by the Taylor
/// coefficients s[j] = f^(j)(g.value())/j! of the outer function.
Jet compose_univariate(const Jet& g, std::span<const double> s);

enum class JetOp { Add, Sub, Mul, Div, Sin, Cos, Exp, Sqrt, PowInt, Scale };

/// Tagged elementary-operation dispatch over jets sharing dim and order.
/// `param` carries the exponent for PowInt and the factor for Scale.
Jet jet_apply(JetOp op, std::span<const Jet> args, double param = 0.0);

}  // namespace hypercheck
