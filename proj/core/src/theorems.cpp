// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/theorems.hpp"

#include <cmath>
#include <sstream>

#include "hypercheck/errors.hpp"

namespace hypercheck {

namespace {
constexpr double kSlack = 1e-12;
}

bool theorem1_hypothesis(double f, double normA2, int m) {
  if (m < 2) throw ArgumentError("dimension must be >= 2");
  return normA2 <= m * m * f * f / 6.0 + kSlack;
}

bool theorem2_hypothesis(double f, double normA2, int m) {
  if (m < 2) throw ArgumentError("dimension must be >= 2");
  if (m < 7) return false;
  const double bound = m * m * f * f / (m - 1.0);
  // For m >= 7 this pinching implies the /6 one.
  return normA2 <= bound + kSlack;
}

bool okumura_bound_holds(double c, double f, double normA2, int m) {
  if (m < 2) throw ArgumentError("dimension must be >= 2");
  if (c < 0.0 && c + f * f < 0.0) {
    std::ostringstream os;
    os << "okumura bound needs c + f^2 >= 0 when c < 0; got " << c + f * f;
    throw PreconditionError(os.str());
  }
  const double disc = m * m * std::pow(f, 4) + 4.0 * (m - 1.0) * c * f * f;
  if (disc < 0.0) {
    std::ostringstream os;
    os << "okumura discriminant m^2 f^4 + 4(m-1) c f^2 is negative: " << disc;
    throw PreconditionError(os.str());
  }
  const double bound = m * c + std::pow(m, 3) * f * f / (2.0 * (m - 1.0)) -
                       m * (m - 2.0) / (2.0 * (m - 1.0)) * std::sqrt(disc);
  return normA2 <= bound + kSlack;
}

double okumura_conclusion_sample(double c, const Eigen::VectorXd& lambda) {
  double s = 0.0;
  for (int i = 0; i < lambda.size(); ++i)
    for (int j = 0; j < lambda.size(); ++j) {
      if (i == j) continue;
      const double d = lambda[i] - lambda[j];
      s += d * d * (c + lambda[i] * lambda[j]);
    }
  return s;
}

double product_normA2(int m1, int m2, double r1, double r2) {
  const double q1 = r2 / r1, q2 = r1 / r2;
  return m1 * q1 * q1 + m2 * q2 * q2;
}

double product_trace_A(int m1, int m2, double r1, double r2) {
  return -m1 * (r2 / r1) + m2 * (r1 / r2);
}

ProductDetails product_admissible(const ProductQuery& q) {
  if (q.m < 2 || q.m1 < 1 || q.m1 > q.m - 1)
    throw ArgumentError("product query needs m >= 2 and m1 in [1, m-1]");
  if (!(q.r1 > 0.0) || !(q.r1 < 1.0))
    throw ArgumentError("product query needs r1 in (0,1)");
  const int m2 = q.m - q.m1;
  const double r2 = std::sqrt(1.0 - q.r1 * q.r1);

  ProductDetails d;
  d.r1_threshold = std::sqrt(1.0 / q.m);
  d.boundary = std::abs(q.r1 - d.r1_threshold) <= kSlack;
  d.admissible = q.r1 > d.r1_threshold + kSlack;
  d.eq_r1_value = std::pow(1.0 / (q.r1 * q.r1) - 1.0, 2);
  d.eq_r1_bound = std::pow(q.m - 1.0, 2);
  const double a = r2 / q.r1, b = q.r1 / r2;
  d.chain_dropped = 5.0 * a * a - (q.m - 7.0) * (q.m - 1.0) * b * b;
  d.chain_full = d.chain_dropped + 2.0 * (q.m - 1.0);
  d.normA2 = product_normA2(q.m1, m2, q.r1, r2);
  const double mf = product_trace_A(q.m1, m2, q.r1, r2);
  d.m2f2 = mf * mf;
  d.hypothesis = theorem1_hypothesis(mf / q.m, d.normA2, q.m);
  return d;
}

std::optional<double> two_curvature_branch(double c, int m) {
  if (m < 3)
    throw ArgumentError("the two-curvature branch needs m >= 3");
  if (c <= 0.0) return std::nullopt;
  return std::sqrt(4.0 * (m - 1.0) * c / 3.0) / m;
}

MasterTerms master_inequality_integrand(const FramePoint& fp) {
  const GeometryFrame& fr = fp.frame();
  const int m = fr.m();
  MasterTerms t;
  const Eigen::VectorXd grad_f = fp.gradient(fp.mean_curvature());
  const double gf2 = fp.vnorm2(grad_f);
  t.term1 = 0.5 * m * fr.normA2 * gf2;
  t.coeff2 = 0.25 * m * fr.f * fr.f - 1.5 * fr.normA2 / m;
  t.coeff3 = 0.25 * m * fr.f * fr.f - 0.5 * fr.normA2 / m;
  t.term2 = t.coeff2 * fp.nabla_norm2(fr.nablaA);
  double sumR = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double d = fr.lambda[i] - fr.lambda[j];
      sumR += d * d * sectional_principal(fr.c, fr.lambda[i], fr.lambda[j]);
    }
  t.term3 = t.coeff3 * sumR;
  return t;
}

std::vector<ScanRow> scan_products(int m, int m1, double r1_min,
                                   double r1_max, double step) {
  if (!(step > 0.0)) throw ArgumentError("scan step must be positive");
  if (!(r1_min > 0.0) || !(r1_max < 1.0) || r1_min > r1_max)
    throw ArgumentError("scan range must satisfy 0 < r1_min <= r1_max < 1");
  std::vector<ScanRow> rows;
  const long n = std::lround((r1_max - r1_min) / step);
  for (long k = 0; k <= n; ++k) {
    const double r1 = r1_min + k * step;
    if (r1 >= 1.0) break;
    ProductDetails d = product_admissible({m, m1, r1});
    ScanRow row;
    row.r1 = r1;
    row.normA2 = d.normA2;
    row.bound = d.m2f2 / 6.0;
    row.hypothesis = d.hypothesis;
    row.admissible = d.admissible;
    row.chain_dropped = d.chain_dropped;
    row.chain_full = d.chain_full;
    rows.push_back(row);
  }
  return rows;
}

std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "r1,normA2,m2f2_over_6,hypothesis,admissible,chain_dropped,"
        "chain_full\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.r1 << ',' << r.normA2 << ',' << r.bound << ','
       << (r.hypothesis ? 1 : 0) << ',' << (r.admissible ? 1 : 0) << ','
       << r.chain_dropped << ',' << r.chain_full << '\n';
  }
  return os.str();
}

}  // namespace hypercheck
