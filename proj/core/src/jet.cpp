// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/jet.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace hypercheck {

namespace {

void check_dim_order(int dim, int order) {
  if (dim < 1 || dim > kMaxJetDim)
    throw ArgumentError("jet dim must be in [1," + std::to_string(kMaxJetDim) +
                        "], got " + std::to_string(dim));
  if (order < 0 || order > kMaxJetOrder)
    throw ArgumentError("jet order must be in [0," +
                        std::to_string(kMaxJetOrder) + "], got " +
                        std::to_string(order));
}

// Multi-indices of fixed degree d in `dim` variables, lexicographically
// descending in the first variable.
void enumerate_degree(int dim, int d, int pos, MultiIndex& cur,
                      std::vector<MultiIndex>& out) {
  if (pos == dim - 1) {
    cur[pos] = static_cast<std::uint8_t>(d);
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int v = d; v >= 0; --v) {
    cur[pos] = static_cast<std::uint8_t>(v);
    enumerate_degree(dim, d - v, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

double factorial_of(const MultiIndex& a) {
  static const double fact[5] = {1, 1, 2, 6, 24};
  double r = 1.0;
  for (auto v : a) r *= fact[v];
  return r;
}

}  // namespace

JetLayout::JetLayout(int dim, int order) : dim_(dim), order_(order) {
  MultiIndex cur{};
  for (int d = 0; d <= order; ++d) enumerate_degree(dim, d, 0, cur, indices_);

  int span = 1;
  for (int i = 0; i < dim; ++i) span *= order + 1;
  lookup_.assign(span, -1);
  for (std::size_t i = 0; i < indices_.size(); ++i)
    lookup_[pack(indices_[i])] = static_cast<int>(i);

  for (std::uint32_t i = 0; i < indices_.size(); ++i) {
    const int di = degree(indices_[i]);
    for (std::uint32_t j = 0; j < indices_.size(); ++j) {
      if (di + degree(indices_[j]) > order) continue;
      MultiIndex sum{};
      for (int k = 0; k < dim; ++k)
        sum[k] = static_cast<std::uint8_t>(indices_[i][k] + indices_[j][k]);
      mul_table_.push_back({i, j, static_cast<std::uint32_t>(position(sum))});
    }
  }
}

int JetLayout::pack(const MultiIndex& a) const {
  int key = 0;
  for (int i = 0; i < dim_; ++i) key = key * (order_ + 1) + a[i];
  return key;
}

int JetLayout::position(const MultiIndex& a) const {
  for (int i = dim_; i < kMaxJetDim; ++i)
    if (a[i] != 0) return -1;
  if (degree(a) > order_) return -1;
  return lookup_[pack(a)];
}

const JetLayout& JetLayout::get(int dim, int order) {
  check_dim_order(dim, order);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim, order}];
  if (!slot) slot.reset(new JetLayout(dim, order));
  return *slot;
}

Jet::Jet(int dim, int order)
    : layout_(&JetLayout::get(dim, order)), c_(layout_->size(), 0.0) {}

Jet Jet::constant(double value, int dim, int order) {
  Jet j(dim, order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int i, double value, int dim, int order) {
  if (i < 0 || i >= dim)
    throw ArgumentError("variable index " + std::to_string(i) +
                        " out of range for dim " + std::to_string(dim));
  Jet j(dim, order);
  j.c_[0] = value;
  if (order >= 1) {
    MultiIndex e{};
    e[i] = 1;
    j.c_[j.layout_->position(e)] = 1.0;
  }
  return j;
}

double Jet::coeff(const MultiIndex& a) const {
  const int p = layout_->position(a);
  if (p < 0) throw ArgumentError("multi-index exceeds jet order");
  return c_[p];
}

double Jet::partial(const MultiIndex& a) const {
  return factorial_of(a) * coeff(a);
}

double Jet::partial1(int i) const {
  MultiIndex a{};
  a[i] = 1;
  return partial(a);
}

double Jet::partial2(int i, int j) const {
  MultiIndex a{};
  a[i] += 1;
  a[j] += 1;
  return partial(a);
}

Jet Jet::derivative(int i) const {
  if (order() < 1) throw ArgumentError("cannot differentiate an order-0 jet");
  if (i < 0 || i >= dim()) throw ArgumentError("derivative index out of range");
  Jet r(dim(), order() - 1);
  const auto& rl = r.layout();
  for (std::size_t p = 0; p < rl.size(); ++p) {
    MultiIndex a = rl.index(p);
    a[i] += 1;
    r.c_[p] = (a[i]) * c_[layout_->position(a)];
  }
  return r;
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order()) throw ArgumentError("cannot raise jet order");
  if (new_order == order()) return *this;
  Jet r(dim(), new_order);
  for (std::size_t p = 0; p < r.layout().size(); ++p)
    r.c_[p] = c_[layout_->position(r.layout().index(p))];
  return r;
}

void Jet::check_same(const Jet& o) const {
  if (!layout_ || !o.layout_) throw ArgumentError("uninitialized jet");
  if (layout_ != o.layout_)
    throw ArgumentError("jet dim/order mismatch in binary operation");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_same(b);
  Jet r(a.dim(), a.order());
  for (const auto& e : a.layout_->mul_table())
    r.c_[e.dst] += a.c_[e.a] * b.c_[e.b];
  return r;
}

Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

Jet compose_univariate(const Jet& g, std::span<const double> s) {
  const int k = g.order();
  if (static_cast<int>(s.size()) != k + 1)
    throw ArgumentError("series length must equal order+1");
  Jet h = g;
  h.coeff_at(0) = 0.0;
  Jet r = Jet::constant(s[k], g.dim(), k);
  for (int j = k - 1; j >= 0; --j) {
    r = r * h;
    r += s[j];
  }
  return r;
}

Jet sin(const Jet& g) {
  const double v = g.value();
  const double sv = std::sin(v), cv = std::cos(v);
  const double tab[4] = {sv, cv, -sv, -cv};
  std::vector<double> s(g.order() + 1);
  double fact = 1.0;
  for (int j = 0; j <= g.order(); ++j) {
    if (j > 0) fact *= j;
    s[j] = tab[j % 4] / fact;
  }
  return compose_univariate(g, s);
}

Jet cos(const Jet& g) {
  const double v = g.value();
  const double sv = std::sin(v), cv = std::cos(v);
  const double tab[4] = {cv, -sv, -cv, sv};
  std::vector<double> s(g.order() + 1);
  double fact = 1.0;
  for (int j = 0; j <= g.order(); ++j) {
    if (j > 0) fact *= j;
    s[j] = tab[j % 4] / fact;
  }
  return compose_univariate(g, s);
}

Jet exp(const Jet& g) {
  const double ev = std::exp(g.value());
  std::vector<double> s(g.order() + 1);
  double fact = 1.0;
  for (int j = 0; j <= g.order(); ++j) {
    if (j > 0) fact *= j;
    s[j] = ev / fact;
  }
  return compose_univariate(g, s);
}

Jet sqrt(const Jet& g) {
  const double v = g.value();
  if (!(v > 0.0)) throw SingularityError("sqrt of jet with non-positive value");
  std::vector<double> s(g.order() + 1);
  s[0] = std::sqrt(v);
  for (int j = 1; j <= g.order(); ++j)
    s[j] = s[j - 1] * (0.5 - (j - 1)) / (j * v);
  return compose_univariate(g, s);
}

Jet recip(const Jet& g) {
  const double v = g.value();
  if (v == 0.0) throw SingularityError("division by jet with zero value");
  std::vector<double> s(g.order() + 1);
  s[0] = 1.0 / v;
  for (int j = 1; j <= g.order(); ++j) s[j] = -s[j - 1] / v;
  return compose_univariate(g, s);
}

Jet pow_int(const Jet& g, int n) {
  if (n < 0) return recip(pow_int(g, -n));
  Jet r = Jet::constant(1.0, g.dim(), g.order());
  Jet base = g;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

Jet jet_apply(JetOp op, std::span<const Jet> args, double param) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw ArgumentError("wrong number of jet arguments for operation");
  };
  switch (op) {
    case JetOp::Add:
      need(2);
      return args[0] + args[1];
    case JetOp::Sub:
      need(2);
      return args[0] - args[1];
    case JetOp::Mul:
      need(2);
      return args[0] * args[1];
    case JetOp::Div:
      need(2);
      return args[0] / args[1];
    case JetOp::Sin:
      need(1);
      return sin(args[0]);
    case JetOp::Cos:
      need(1);
      return cos(args[0]);
    case JetOp::Exp:
      need(1);
      return exp(args[0]);
    case JetOp::Sqrt:
      need(1);
      return sqrt(args[0]);
    case JetOp::PowInt:
      need(1);
      return pow_int(args[0], static_cast<int>(param));
    case JetOp::Scale:
      need(1);
      return args[0] * param;
  }
  throw ArgumentError("unknown jet operation");
}

}  // namespace hypercheck
