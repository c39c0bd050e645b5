// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace hypercheck {

namespace {

// Everything the residual formulas need at one point, computed once.
struct PointData {
  int m = 0;
  double c = 0.0, f = 0.0, normA2 = 0.0, traceA3 = 0.0;
  Eigen::MatrixXd g, g_inv, A, A2v, A3v, h;
  Eigen::VectorXd grad_f, gradA2, gradA3t;
  Eigen::MatrixXd hess_f, hess_x0;
  double x0 = 0.0;
  std::vector<Eigen::MatrixXd> nablaA, nablaA2, nablaA3;
  double nablaA_n2 = 0.0;       // |nabla A|^2, full g-contraction
  double lapA2 = 0.0, lapA3t = 0.0;
  Eigen::VectorXd lambda;
  double sumR = 0.0;            // sum_{i<j} (li-lj)^2 (c + li*lj)
  Eigen::VectorXd div_t1, div_t2, div_t3, div_phi;
  double stress = 0.0, bicons = 0.0;
  Eigen::MatrixXd T1v, T2v, PHIv;
  std::vector<double> riem;
  double intr_scal = 0.0;

  double ip(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(g * v);
  }
  double opform(const Eigen::MatrixXd& op, const Eigen::MatrixXd& form) const {
    return (op * g_inv * form).trace();
  }
};

PointData make_point_data(const FramePoint& fp) {
  PointData p;
  const GeometryFrame& fr = fp.frame();
  p.m = fr.m();
  p.c = fr.c;
  p.f = fr.f;
  p.normA2 = fr.normA2;
  p.traceA3 = fr.traceA3;
  p.g = fr.g;
  p.g_inv = fr.g_inv;
  p.A = fr.A;
  p.A2v = fr.A * fr.A;
  p.A3v = p.A2v * fr.A;
  p.h = fr.h;
  p.lambda = fr.lambda;
  p.grad_f = fp.gradient(fp.mean_curvature());
  p.gradA2 = fp.gradient(fp.norm_A2());
  p.gradA3t = fp.gradient(fp.trace_A3());
  p.hess_f = fp.hessian(fp.mean_curvature());
  {
    const Jet x0 = field_ambient_coordinate(0).eval(fp);
    p.x0 = x0.coeff_at(0);
    p.hess_x0 = fp.hessian(x0);
  }
  p.nablaA = fr.nablaA;
  p.nablaA2 = fp.covariant_derivative(fp.shape_op2());
  p.nablaA3 = fp.covariant_derivative(fp.shape_op3());
  p.nablaA_n2 = fp.nabla_norm2(p.nablaA);
  p.lapA2 = fp.laplacian(fp.norm_A2());
  p.lapA3t = fp.laplacian(fp.trace_A3());
  for (int i = 0; i < p.m; ++i)
    for (int j = i + 1; j < p.m; ++j) {
      const double d = p.lambda[i] - p.lambda[j];
      p.sumR += d * d * sectional_principal(p.c, p.lambda[i], p.lambda[j]);
    }
  p.div_t1 = divergence_11(fp, tensor_T1());
  p.div_t2 = divergence_11(fp, tensor_T2());
  p.div_t3 = divergence_11(fp, tensor_f2A());
  p.div_phi = divergence_11(fp, tensor_PHI());
  p.stress = stress_equivalence_residual(fp);
  p.bicons = fp.vnorm(biconservativity_residual(fp));
  p.T1v = build_tensor(fr, ConservedTensorId::T1);
  p.T2v = build_tensor(fr, ConservedTensorId::T2);
  p.PHIv = build_tensor(fr, ConservedTensorId::PHI);
  p.riem = fp.intrinsic_curvature();
  p.intr_scal = fp.intrinsic_scalar(p.riem);
  // intrinsic_sectional needs fp; precompute gauss residual here instead.
  return p;
}

// Lowered covariant derivative <(nabla A)(d_k, d_j), d_i>.
double lowered_nablaA(const PointData& p, int i, int k, int j) {
  double s = 0.0;
  for (int l = 0; l < p.m; ++l) s += p.g(i, l) * p.nablaA[k](l, j);
  return s;
}

double check_codazzi(const PointData& p) {
  double r = 0.0;
  for (int i = 0; i < p.m; ++i)
    for (int k = 0; k < p.m; ++k)
      for (int j = 0; j < p.m; ++j) {
        const double base = lowered_nablaA(p, i, k, j);
        r = std::max(r, std::abs(base - lowered_nablaA(p, k, i, j)));
        r = std::max(r, std::abs(base - lowered_nablaA(p, i, j, k)));
      }
  return r;
}

double check_trace_nablaA(const PointData& p) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p.m);
  for (int i = 0; i < p.m; ++i)
    for (int a = 0; a < p.m; ++a)
      for (int b = 0; b < p.m; ++b)
        v[i] += p.g_inv(a, b) * p.nablaA[a](i, b);
  v -= p.m * p.grad_f;
  return std::sqrt(p.ip(v, v));
}

double check_scalar_curv(const PointData& p) {
  const double rhs = p.m * (p.m - 1) * p.c + p.m * p.m * p.f * p.f - p.normA2;
  return std::abs(p.intr_scal - rhs) / (1.0 + std::abs(rhs));
}

// trace (nabla A)(., B .) as a vector, B a (1,1) value matrix.
Eigen::VectorXd traced_nablaA(const PointData& p, const Eigen::MatrixXd& B) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p.m);
  for (int i = 0; i < p.m; ++i)
    for (int a = 0; a < p.m; ++a)
      for (int b = 0; b < p.m; ++b)
        for (int l = 0; l < p.m; ++l)
          v[i] += p.g_inv(a, b) * p.nablaA[a](i, l) * B(l, b);
  return v;
}

double check_grad_trace_power(const PointData& p, int n) {
  const Eigen::MatrixXd B =
      n == 2 ? p.A : p.A2v;
  const Eigen::VectorXd target =
      (n == 2 ? p.gradA2 / 2.0 : p.gradA3t / 3.0);
  Eigen::VectorXd v = traced_nablaA(p, B) - target;
  return std::sqrt(p.ip(v, v));
}

double check_nabla_power_recursion(const PointData& p, int n) {
  const Eigen::MatrixXd& B = n == 2 ? p.A : p.A2v;
  const std::vector<Eigen::MatrixXd>& nAn = n == 2 ? p.nablaA2 : p.nablaA3;
  const std::vector<Eigen::MatrixXd>& nAprev =
      n == 2 ? p.nablaA : p.nablaA2;
  double r = 0.0;
  for (int k = 0; k < p.m; ++k) {
    Eigen::MatrixXd res = nAn[k] - p.nablaA[k] * B - p.A * nAprev[k];
    r = std::max(r, res.cwiseAbs().maxCoeff());
  }
  return r;
}

Eigen::VectorXd divergence_of(const PointData& p,
                              const std::vector<Eigen::MatrixXd>& nT) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p.m);
  for (int i = 0; i < p.m; ++i)
    for (int a = 0; a < p.m; ++a)
      for (int b = 0; b < p.m; ++b) v[i] += p.g_inv(a, b) * nT[a](i, b);
  return v;
}

double check_div_A2(const PointData& p) {
  Eigen::VectorXd v = divergence_of(p, p.nablaA2) - 0.5 * p.gradA2 -
                      p.m * (p.A * p.grad_f);
  return std::sqrt(p.ip(v, v));
}

double check_div_A3(const PointData& p) {
  Eigen::VectorXd v = divergence_of(p, p.nablaA3) - p.gradA3t / 3.0 -
                      0.5 * (p.A * p.gradA2) - p.m * (p.A2v * p.grad_f);
  return std::sqrt(p.ip(v, v));
}

double check_kato(const PointData& p) {
  return std::max(0.0,
                  0.25 * p.ip(p.gradA2, p.gradA2) - p.normA2 * p.nablaA_n2);
}

double check_simons(const PointData& p) {
  return std::abs(0.5 * p.lapA2 - p.nablaA_n2 -
                  p.m * p.opform(p.A, p.hess_f) - p.sumR);
}

double check_pointwise_int1(const PointData& p) {
  const double gf2 = p.ip(p.grad_f, p.grad_f);
  return std::abs(p.f * p.ip(p.grad_f, p.gradA2) -
                  0.5 * p.m * p.m * p.f * p.f * gf2 +
                  p.f * p.f * p.m * p.opform(p.A, p.hess_f) +
                  2.0 * p.f * p.opform(p.A2v, p.hess_f));
}

double check_pointwise_int2(const PointData& p) {
  const double gf2 = p.ip(p.grad_f, p.grad_f);
  return std::abs(p.ip(p.grad_f, p.gradA3t) / 3.0 +
                  std::pow(p.m, 3) * p.f * p.f * gf2 / 8.0 +
                  0.5 * p.m * p.f * p.opform(p.A2v, p.hess_f) +
                  p.opform(p.A3v, p.hess_f));
}

double vnorm_g(const PointData& p, const Eigen::VectorXd& v) {
  return std::sqrt(p.ip(v, v));
}

enum TolClass { kPointwise, kTight, kFourthOrder };

struct PointwiseCheck {
  const char* name;
  const char* statement;
  TolClass tol_class;
  bool bicons_only;
  double (*fn)(const PointData&, const FramePoint&);
};

double gauss_residual(const PointData& p, const FramePoint& fp) {
  double r = 0.0;
  for (int i = 0; i < p.m; ++i)
    for (int j = 0; j < p.m; ++j) {
      const double lhs = fp.intrinsic_sectional(p.riem, i, j);
      const double rhs =
          p.c * (p.g(j, j) * p.g(i, i) - p.g(i, j) * p.g(i, j)) +
          p.h(j, j) * p.h(i, i) - p.h(i, j) * p.h(i, j);
      r = std::max(r, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
  return r;
}

const PointwiseCheck kPointwiseChecks[] = {
    {"codazzi", "<(nabla A)(X,Y),Z> is totally symmetric", kTight, false,
     [](const PointData& p, const FramePoint&) { return check_codazzi(p); }},
    {"gauss",
     "R(di,dj,dj,di) = c(g_jj g_ii - g_ij^2) + h_jj h_ii - h_ij^2", kPointwise,
     false, gauss_residual},
    {"trace_nablaA", "trace (nabla A)(.,.) = m grad f", kTight, false,
     [](const PointData& p, const FramePoint&) {
       return check_trace_nablaA(p);
     }},
    {"scalar_curv", "m(m-1)(R - c) = m^2 f^2 - |A|^2", kPointwise, false,
     [](const PointData& p, const FramePoint&) {
       return check_scalar_curv(p);
     }},
    {"grad_trace_power_2", "(1/2) grad |A|^2 = trace (nabla A)(., A .)",
     kPointwise, false,
     [](const PointData& p, const FramePoint&) {
       return check_grad_trace_power(p, 2);
     }},
    {"grad_trace_power_3", "(1/3) grad tr A^3 = trace (nabla A)(., A^2 .)",
     kPointwise, false,
     [](const PointData& p, const FramePoint&) {
       return check_grad_trace_power(p, 3);
     }},
    {"nabla_power_recursion_2",
     "(nabla A^2)(X,Y) = (nabla A)(X, A Y) + A((nabla A)(X,Y))", kPointwise,
     false,
     [](const PointData& p, const FramePoint&) {
       return check_nabla_power_recursion(p, 2);
     }},
    {"nabla_power_recursion_3",
     "(nabla A^3)(X,Y) = (nabla A)(X, A^2 Y) + A((nabla A^2)(X,Y))",
     kPointwise, false,
     [](const PointData& p, const FramePoint&) {
       return check_nabla_power_recursion(p, 3);
     }},
    {"div_A2", "Div A^2 = (1/2) grad |A|^2 + m A(grad f)", kPointwise, false,
     [](const PointData& p, const FramePoint&) { return check_div_A2(p); }},
    {"div_A3",
     "Div A^3 = (1/3) grad tr A^3 + (1/2) A(grad |A|^2) + m A^2(grad f)",
     kPointwise, false,
     [](const PointData& p, const FramePoint&) { return check_div_A3(p); }},
    {"div_phi", "Div(psi3 Id - psi2 A + m f A^2 - A^3) = 0", kPointwise,
     false,
     [](const PointData& p, const FramePoint&) {
       return vnorm_g(p, p.div_phi);
     }},
    {"div_t1", "Div((1/2) scal Id - Ric) = 0", kPointwise, false,
     [](const PointData& p, const FramePoint&) {
       return vnorm_g(p, p.div_t1);
     }},
    {"div_t2", "Div(m f Id - A) = 0", kPointwise, false,
     [](const PointData& p, const FramePoint&) {
       return vnorm_g(p, p.div_t2);
     }},
    {"div_t3", "Div(f^2 A) = 0 on biconservative hypersurfaces", kPointwise,
     true,
     [](const PointData& p, const FramePoint&) {
       return vnorm_g(p, p.div_t3);
     }},
    {"kato", "(1/4)|grad |A|^2|^2 <= |A|^2 |nabla A|^2", kPointwise, false,
     [](const PointData& p, const FramePoint&) { return check_kato(p); }},
    {"simons",
     "(1/2) lap |A|^2 = |nabla A|^2 + m <A, Hess f> + "
     "sum_{i<j} (li-lj)^2 (c + li lj)",
     kFourthOrder, false,
     [](const PointData& p, const FramePoint&) { return check_simons(p); }},
    {"stress_equiv", "f Div S2 = m Div(f^2 A)", kPointwise, false,
     [](const PointData& p, const FramePoint&) { return p.stress; }},
    {"biconservativity", "A(grad f) = -(m/2) f grad f", kPointwise, false,
     [](const PointData& p, const FramePoint&) { return p.bicons; }},
    {"pointwise_int1",
     "f <grad f, grad |A|^2> = (m^2 f^2/2)|grad f|^2 - m f^2 <A, Hess f> - "
     "2 f <A^2, Hess f> (biconservative points)",
     kFourthOrder, true,
     [](const PointData& p, const FramePoint&) {
       return check_pointwise_int1(p);
     }},
    {"pointwise_int2",
     "(1/3)<grad f, grad tr A^3> = -(m^3 f^2/8)|grad f|^2 - "
     "(m/2) f <A^2, Hess f> - <A^3, Hess f> (biconservative points)",
     kFourthOrder, true,
     [](const PointData& p, const FramePoint&) {
       return check_pointwise_int2(p);
     }},
};

struct IntegralCheck {
  const char* name;
  const char* statement;
  bool bicons_only;
  double (*fn)(const PointData&);
};

// Integrands of integrals that must vanish on compact models. Identities
// printed with the opposite Laplacian convention have been re-signed for
// lap = +trace Hess.
const IntegralCheck kIntegralChecks[] = {
    {"box_zero_t1_f", "int <T1, Hess f> = 0 (T1 divergence-free)", false,
     [](const PointData& p) { return p.opform(p.T1v, p.hess_f); }},
    {"box_zero_t1_x0", "int <T1, Hess x0> = 0", false,
     [](const PointData& p) { return p.opform(p.T1v, p.hess_x0); }},
    {"box_zero_t2_f", "int <T2, Hess f> = 0 (T2 divergence-free)", false,
     [](const PointData& p) { return p.opform(p.T2v, p.hess_f); }},
    {"box_zero_t2_x0", "int <T2, Hess x0> = 0", false,
     [](const PointData& p) { return p.opform(p.T2v, p.hess_x0); }},
    {"box_zero_phi_f", "int <phi, Hess f> = 0 (phi divergence-free)", false,
     [](const PointData& p) { return p.opform(p.PHIv, p.hess_f); }},
    {"box_zero_phi_x0", "int <phi, Hess x0> = 0", false,
     [](const PointData& p) { return p.opform(p.PHIv, p.hess_x0); }},
    {"box_selfadjoint_t1", "int f <T1,Hess x0> = int x0 <T1,Hess f>", false,
     [](const PointData& p) {
       return p.f * p.opform(p.T1v, p.hess_x0) -
              p.x0 * p.opform(p.T1v, p.hess_f);
     }},
    {"box_selfadjoint_t2", "int f <T2,Hess x0> = int x0 <T2,Hess f>", false,
     [](const PointData& p) {
       return p.f * p.opform(p.T2v, p.hess_x0) -
              p.x0 * p.opform(p.T2v, p.hess_f);
     }},
    {"box_selfadjoint_phi", "int f <phi,Hess x0> = int x0 <phi,Hess f>",
     false,
     [](const PointData& p) {
       return p.f * p.opform(p.PHIv, p.hess_x0) -
              p.x0 * p.opform(p.PHIv, p.hess_f);
     }},
    {"int_f2A2",
     "-(1/2) int f^2 lap |A|^2 = int (m^2 f^2/2)|grad f|^2 - "
     "2 f <A^2, Hess f> (biconservative)",
     true,
     [](const PointData& p) {
       const double gf2 = p.ip(p.grad_f, p.grad_f);
       return -0.5 * p.f * p.f * p.lapA2 -
              0.5 * p.m * p.m * p.f * p.f * gf2 +
              2.0 * p.f * p.opform(p.A2v, p.hess_f);
     }},
    {"int_fA3",
     "(1/3) int f lap tr A^3 = int (m^3 f^2/8)|grad f|^2 + "
     "(m/2) f <A^2, Hess f> + <A^3, Hess f> (biconservative)",
     true,
     [](const PointData& p) {
       const double gf2 = p.ip(p.grad_f, p.grad_f);
       return p.f * p.lapA3t / 3.0 -
              std::pow(p.m, 3) * p.f * p.f * gf2 / 8.0 -
              0.5 * p.m * p.f * p.opform(p.A2v, p.hess_f) -
              p.opform(p.A3v, p.hess_f);
     }},
    {"int_firstpaper",
     "(1/2) int f^2 lap |A|^2 = int f^2 (|nabla A|^2 + "
     "sum_{i<j} (li-lj)^2 (c + li lj)) (biconservative)",
     true,
     [](const PointData& p) {
       return 0.5 * p.f * p.f * p.lapA2 -
              p.f * p.f * (p.nablaA_n2 + p.sumR);
     }},
    {"int_fA2hessf",
     "int 2 f <A^2, Hess f> = int (m^2 f^2/2)|grad f|^2 + "
     "f^2 (|nabla A|^2 + sum_{i<j} (li-lj)^2 (c + li lj)) (biconservative)",
     true,
     [](const PointData& p) {
       const double gf2 = p.ip(p.grad_f, p.grad_f);
       return 2.0 * p.f * p.opform(p.A2v, p.hess_f) -
              0.5 * p.m * p.m * p.f * p.f * gf2 -
              p.f * p.f * (p.nablaA_n2 + p.sumR);
     }},
    {"int_master",
     "the six-term vanishing integral obtained from int <phi, Hess f> = 0 "
     "(biconservative)",
     true,
     [](const PointData& p) {
       const double gf2 = p.ip(p.grad_f, p.grad_f);
       const double q = p.m * p.m * p.f * p.f - p.normA2;  // 2 psi2
       return -0.5 * p.m * q * gf2 + p.f * p.lapA3t / 3.0 -
              0.5 * p.m * p.f * p.f * p.lapA2 -
              p.ip(p.gradA2, p.gradA2) / (4.0 * p.m) +
              q * (p.nablaA_n2 + p.sumR) / (2.0 * p.m) +
              p.m * p.f * p.opform(p.A2v, p.hess_f) -
              p.opform(p.A3v, p.hess_f);
     }},
};

const PointwiseCheck* find_pointwise(const std::string& id) {
  for (const auto& ch : kPointwiseChecks)
    if (id == ch.name) return &ch;
  return nullptr;
}

const IntegralCheck* find_integral(const std::string& id) {
  for (const auto& ch : kIntegralChecks)
    if (id == ch.name) return &ch;
  return nullptr;
}

std::vector<std::string> convention_notes() {
  return {
      "laplacian = +trace(covariant Hessian); identities printed with the "
      "opposite sign convention are re-signed accordingly",
      "scalar curvature identity implemented as m(m-1)(R - c) = m^2 f^2 - "
      "|A|^2",
  };
}

}  // namespace

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skip:
      return "SKIP";
    case CheckStatus::Error:
      return "ERROR";
  }
  return "?";
}

CheckStatus status_from_name(const std::string& name) {
  if (name == "PASS") return CheckStatus::Pass;
  if (name == "FAIL") return CheckStatus::Fail;
  if (name == "SKIP") return CheckStatus::Skip;
  if (name == "ERROR") return CheckStatus::Error;
  throw ArgumentError("unknown check status '" + name + "'");
}

std::vector<std::string> pointwise_check_names() {
  std::vector<std::string> v;
  for (const auto& ch : kPointwiseChecks) v.push_back(ch.name);
  return v;
}

std::vector<std::string> integral_check_names() {
  std::vector<std::string> v;
  for (const auto& ch : kIntegralChecks) v.push_back(ch.name);
  return v;
}

std::string check_statement(const std::string& id) {
  if (const auto* p = find_pointwise(id)) return p->statement;
  if (const auto* q = find_integral(id)) return q->statement;
  throw ArgumentError("unknown check '" + id + "'");
}

double run_pointwise_check(const ChartMap& chart, const Eigen::VectorXd& u,
                           const std::string& id, int order,
                           bool enforce_precondition,
                           double bicons_threshold) {
  const auto* ch = find_pointwise(id);
  if (!ch) throw ArgumentError("unknown pointwise check '" + id + "'");
  FramePoint fp(chart, u, order);
  PointData pd = make_point_data(fp);
  if (ch->bicons_only && enforce_precondition &&
      pd.bicons > bicons_threshold) {
    std::ostringstream os;
    os << "check '" << id << "' needs a biconservative point; residual "
       << pd.bicons << " exceeds " << bicons_threshold;
    throw PreconditionError(os.str());
  }
  return ch->fn(pd, fp);
}

IntegralResult run_integral_check(const ChartMap& chart, const std::string& id,
                                  const IntegralOptions& opt) {
  const auto* ch = find_integral(id);
  if (!ch) throw ArgumentError("unknown integral check '" + id + "'");
  auto res = integrate_batch(
      chart, 1,
      [ch](const FramePoint& fp, std::vector<double>& v) {
        v[0] = ch->fn(make_point_data(fp));
      },
      opt);
  res[0].value = std::abs(res[0].value);
  return res[0];
}

namespace {

struct PointwiseAggregate {
  std::vector<double> max_r, sum_sq;
  std::size_t n = 0;
  std::string error;

  explicit PointwiseAggregate(std::size_t nchecks)
      : max_r(nchecks, 0.0), sum_sq(nchecks, 0.0) {}

  void merge(const PointwiseAggregate& o) {
    for (std::size_t k = 0; k < max_r.size(); ++k) {
      max_r[k] = std::max(max_r[k], o.max_r[k]);
      sum_sq[k] += o.sum_sq[k];
    }
    n += o.n;
    if (error.empty()) error = o.error;
  }
};

void pointwise_range(const ChartMap& chart, const QuadratureGrid& grid,
                     int order, std::size_t begin, std::size_t end,
                     PointwiseAggregate& agg) {
  const int d = chart.dim();
  const std::size_t nchecks = std::size(kPointwiseChecks);
  std::vector<std::size_t> idx(d);
  Eigen::VectorXd u(d);
  for (std::size_t flat = begin; flat < end; ++flat) {
    std::size_t rem = flat;
    for (int i = d - 1; i >= 0; --i) {
      idx[i] = rem % grid.nodes[i].size();
      rem /= grid.nodes[i].size();
    }
    for (int i = 0; i < d; ++i) u[i] = grid.nodes[i][idx[i]];
    try {
      FramePoint fp(chart, u, order);
      PointData pd = make_point_data(fp);
      for (std::size_t k = 0; k < nchecks; ++k) {
        const double r = kPointwiseChecks[k].fn(pd, fp);
        agg.max_r[k] = std::max(agg.max_r[k], r);
        agg.sum_sq[k] += r * r;
      }
      ++agg.n;
    } catch (const std::exception& e) {
      if (agg.error.empty()) agg.error = e.what();
    }
  }
}

double tol_of(TolClass c, const Tolerances& tol) {
  switch (c) {
    case kPointwise:
      return tol.pointwise;
    case kTight:
      return tol.codazzi;
    case kFourthOrder:
      return tol.fourth_order;
  }
  return tol.pointwise;
}

}  // namespace

VerificationReport run_suite(const ModelSpec& spec, const ChartMap& chart,
                             const SuiteOptions& opt) {
  VerificationReport report;
  report.model = spec.name();
  report.jet_order = opt.jet_order;
  {
    auto axes_str = [](const std::vector<int>& v, int fallback) {
      if (v.empty()) return std::to_string(fallback);
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "x" : "") + std::to_string(v[i]);
      return s;
    };
    std::ostringstream os;
    os << "pointwise "
       << axes_str(opt.pointwise_axis_points, opt.pointwise_points)
       << "/axis, integral "
       << axes_str(opt.integral_axis_points, opt.integral_points)
       << "/axis, dim " << chart.dim();
    report.grid = os.str();
  }
  report.conventions = convention_notes();

  const std::size_t npw = std::size(kPointwiseChecks);
  PointwiseAggregate agg(npw);
  if (opt.run_pointwise || opt.run_integrals) {
    // The biconservativity status gates integral checks too, so the
    // pointwise sweep always runs.
    const QuadratureGrid grid =
        opt.pointwise_axis_points.empty()
            ? build_grid(chart, opt.pointwise_points)
            : build_grid(chart, opt.pointwise_axis_points);
    const std::size_t total = grid.total_points();
    const int nt = std::max(1, std::min(opt.threads, 32));
    // Fixed-size chunks merged in index order: identical aggregation for
    // every thread count.
    const std::size_t chunk = 64;
    const std::size_t nchunks = (total + chunk - 1) / chunk;
    std::vector<PointwiseAggregate> partial(nchunks, PointwiseAggregate(npw));
    auto run_chunk = [&](std::size_t ci) {
      const std::size_t b = ci * chunk;
      pointwise_range(chart, grid, opt.jet_order, b,
                      std::min(total, b + chunk), partial[ci]);
    };
    if (nt == 1 || nchunks == 1) {
      for (std::size_t ci = 0; ci < nchunks; ++ci) run_chunk(ci);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
          for (std::size_t ci = next.fetch_add(1); ci < nchunks;
               ci = next.fetch_add(1))
            run_chunk(ci);
        });
      }
      for (auto& th : pool) th.join();
    }
    for (std::size_t ci = 0; ci < nchunks; ++ci) agg.merge(partial[ci]);
  }

  std::size_t bicons_idx = 0;
  for (std::size_t k = 0; k < npw; ++k)
    if (std::string("biconservativity") == kPointwiseChecks[k].name)
      bicons_idx = k;
  report.bicons_max = agg.max_r[bicons_idx];
  report.biconservative = agg.error.empty() &&
                          report.bicons_max <= opt.tol.bicons_threshold;

  auto skip_note = [&] {
    std::ostringstream os;
    os << "model is not biconservative (max residual " << report.bicons_max
       << "); identity does not apply";
    return os.str();
  };

  if (opt.run_pointwise) {
    for (std::size_t k = 0; k < npw; ++k) {
      const auto& ch = kPointwiseChecks[k];
      CheckOutcome out;
      out.check = ch.name;
      out.statement = ch.statement;
      out.residual_max = agg.max_r[k];
      out.residual_l2 = agg.n ? std::sqrt(agg.sum_sq[k] / agg.n) : 0.0;
      out.tolerance = tol_of(ch.tol_class, opt.tol);
      if (!agg.error.empty()) {
        out.status = CheckStatus::Error;
        out.note = agg.error;
      } else if (std::string("biconservativity") == ch.name) {
        // Informational: PASS means the model is biconservative, SKIP that
        // the residual is genuinely nonzero (not a code failure).
        out.tolerance = opt.tol.bicons_threshold;
        out.status = report.biconservative ? CheckStatus::Pass
                                           : CheckStatus::Skip;
        if (!report.biconservative) out.note = skip_note();
      } else if (ch.bicons_only && !report.biconservative) {
        out.status = CheckStatus::Skip;
        out.note = skip_note();
      } else {
        out.status = out.residual_max <= out.tolerance ? CheckStatus::Pass
                                                       : CheckStatus::Fail;
      }
      report.checks.push_back(std::move(out));
    }
  }

  if (opt.run_integrals && agg.error.empty()) {
    const std::size_t ni = std::size(kIntegralChecks);
    IntegralOptions iopt;
    iopt.points_per_axis = opt.integral_points;
    iopt.axis_points = opt.integral_axis_points;
    iopt.jet_order = opt.jet_order;
    iopt.threads = opt.threads;
    std::vector<IntegralResult> res;
    std::string error;
    try {
      res = integrate_batch(
          chart, ni,
          [](const FramePoint& fp, std::vector<double>& v) {
            PointData pd = make_point_data(fp);
            for (std::size_t k = 0; k < std::size(kIntegralChecks); ++k)
              v[k] = kIntegralChecks[k].fn(pd);
          },
          iopt);
    } catch (const std::exception& e) {
      error = e.what();
    }
    for (std::size_t k = 0; k < ni; ++k) {
      const auto& ch = kIntegralChecks[k];
      CheckOutcome out;
      out.check = ch.name;
      out.statement = ch.statement;
      if (!error.empty()) {
        out.status = CheckStatus::Error;
        out.note = error;
      } else if (ch.bicons_only && !report.biconservative) {
        out.residual_max = std::abs(res[k].value);
        out.residual_l2 = out.residual_max;
        out.tolerance =
            std::max(opt.tol.integral_floor, 3.0 * res[k].error_estimate);
        out.status = CheckStatus::Skip;
        out.note = skip_note();
      } else {
        out.residual_max = std::abs(res[k].value);
        out.residual_l2 = out.residual_max;
        out.tolerance =
            std::max(opt.tol.integral_floor, 3.0 * res[k].error_estimate);
        out.status = out.residual_max <= out.tolerance ? CheckStatus::Pass
                                                       : CheckStatus::Fail;
        std::ostringstream os;
        os << "quadrature error estimate " << res[k].error_estimate;
        out.note = os.str();
      }
      report.checks.push_back(std::move(out));
    }
  } else if (opt.run_integrals) {
    for (const auto& ch : kIntegralChecks) {
      CheckOutcome out;
      out.check = ch.name;
      out.statement = ch.statement;
      out.status = CheckStatus::Error;
      out.note = agg.error;
      report.checks.push_back(std::move(out));
    }
  }

  return report;
}

VerificationReport run_suite(const ModelSpec& spec, const SuiteOptions& opt) {
  return run_suite(spec, instantiate(spec), opt);
}

bool VerificationReport::all_ok() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail || c.status == CheckStatus::Error)
      return false;
  return true;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["model"] = model;
  j["grid"] = grid;
  j["jet_order"] = jet_order;
  j["biconservative"] = biconservative;
  j["bicons_max"] = bicons_max;
  j["conventions"] = conventions;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json row;
    row["check"] = c.check;
    row["statement"] = c.statement;
    row["residual_max"] = c.residual_max;
    row["residual_l2"] = c.residual_l2;
    row["tol"] = c.tolerance;
    row["status"] = status_name(c.status);
    row["note"] = c.note;
    j["checks"].push_back(std::move(row));
  }
  return j;
}

VerificationReport VerificationReport::from_json(
    const nlohmann::ordered_json& j) {
  VerificationReport r;
  r.model = j.at("model").get<std::string>();
  r.grid = j.at("grid").get<std::string>();
  r.jet_order = j.at("jet_order").get<int>();
  r.biconservative = j.at("biconservative").get<bool>();
  r.bicons_max = j.at("bicons_max").get<double>();
  r.conventions = j.at("conventions").get<std::vector<std::string>>();
  for (const auto& row : j.at("checks")) {
    CheckOutcome c;
    c.check = row.at("check").get<std::string>();
    c.statement = row.at("statement").get<std::string>();
    c.residual_max = row.at("residual_max").get<double>();
    c.residual_l2 = row.at("residual_l2").get<double>();
    c.tolerance = row.at("tol").get<double>();
    c.status = status_from_name(row.at("status").get<std::string>());
    c.note = row.at("note").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  return r;
}

std::string VerificationReport::to_csv() const {
  std::ostringstream os;
  os << "check,model,grid,residual_max,residual_l2,tol,status,note\n";
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    q += '"';
    return q;
  };
  os.precision(17);
  for (const auto& c : checks) {
    os << c.check << ',' << quote(model) << ',' << quote(grid) << ','
       << c.residual_max << ',' << c.residual_l2 << ',' << c.tolerance << ','
       << status_name(c.status) << ',' << quote(c.note) << '\n';
  }
  return os.str();
}

}  // namespace hypercheck
