// SPDX-License-Identifier: Apache-2.0
//
// Rigidity-theorem arithmetic: the pinching hypotheses, the adapted Okumura
// bound, the two-curvature classification relation, and the admissible
// region of sphere products. These are pointwise/scan predicates; the global
// rigidity statements themselves need compactness arguments that are not
// numerics.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hypercheck/frame.hpp"

namespace hypercheck {

/// |A|^2 <= m^2 f^2 / 6 (with 1e-12 slack).
bool theorem1_hypothesis(double f, double normA2, int m);

/// m >= 7 and |A|^2 <= m^2 f^2 / (m-1); for such m the bound implies the
/// m^2 f^2 / 6 pinching.
bool theorem2_hypothesis(double f, double normA2, int m);

/// |A|^2 <= m c + m^3 f^2 / (2(m-1)) - m(m-2)/(2(m-1)) sqrt(m^2 f^4 +
/// 4(m-1) c f^2). Requires c + f^2 >= 0 when c < 0 and a nonnegative
/// discriminant; violations raise PreconditionError.
bool okumura_bound_holds(double c, double f, double normA2, int m);

/// sum over ordered pairs i != j of (li - lj)^2 (c + li lj); the quantity
/// the bound forces to be nonnegative.
double okumura_conclusion_sample(double c, const Eigen::VectorXd& lambda);

struct ProductQuery {
  int m = 2;       // total dimension, >= 2
  int m1 = 1;      // multiplicity of the first factor, in [1, m-1]
  double r1 = 0.6; // first radius in (0,1); r2 = sqrt(1 - r1^2)
};

struct ProductDetails {
  bool admissible = false;   // r1 > sqrt(1/m), strict with 1e-12 slack
  bool boundary = false;     // |r1 - sqrt(1/m)| <= 1e-12
  double r1_threshold = 0.0; // sqrt(1/m)
  double eq_r1_value = 0.0;  // (1/r1^2 - 1)^2
  double eq_r1_bound = 0.0;  // (m-1)^2
  /// Proof-chain quantity for m1 = 1: 5 (r2/r1)^2 - (m-7)(m-1)(r1/r2)^2.
  double chain_dropped = 0.0;
  /// Same with the dropped 2(m-1) term kept.
  double chain_full = 0.0;
  double normA2 = 0.0;
  double m2f2 = 0.0;
  bool hypothesis = false;   // |A|^2 <= m^2 f^2 / 6
};

ProductDetails product_admissible(const ProductQuery& q);

/// Closed-form data of S^{m1}(r1) x S^{m2}(r2) in the unit sphere.
double product_normA2(int m1, int m2, double r1, double r2);
double product_trace_A(int m1, int m2, double r1, double r2);  // = m f

/// The f value forced by c = 3 m^2 f^2 / (4(m-1)) on the non-umbilical
/// two-curvature branch; empty for c <= 0, where the relation fails.
std::optional<double> two_curvature_branch(double c, int m);

struct MasterTerms {
  double term1 = 0.0;  // (m/2) |A|^2 |grad f|^2
  double term2 = 0.0;  // coeff2 * |nabla A|^2
  double term3 = 0.0;  // coeff3 * sum_{i<j} (li-lj)^2 (c + li lj)
  double coeff2 = 0.0; // m f^2/4 - 3 |A|^2 / (2m)
  double coeff3 = 0.0; // m f^2/4 - |A|^2 / (2m)
};

MasterTerms master_inequality_integrand(const FramePoint& fp);

struct ScanRow {
  double r1 = 0.0;
  double normA2 = 0.0;
  double bound = 0.0;  // m^2 f^2 / 6
  bool hypothesis = false;
  bool admissible = false;
  double chain_dropped = 0.0;
  double chain_full = 0.0;
};

/// Scan r1 in [r1_min, r1_max] with the given step.
std::vector<ScanRow> scan_products(int m, int m1, double r1_min,
                                   double r1_max, double step);

std::string scan_csv(const std::vector<ScanRow>& rows);

}  // namespace hypercheck
