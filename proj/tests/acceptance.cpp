// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance gate: one line per criterion, exit code = number of
// failed criteria. Every threshold here is part of the project contract.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hypercheck/catalog.hpp"
#include "hypercheck/theorems.hpp"
#include "hypercheck/verifier.hpp"

using namespace hypercheck;

namespace {

int failures = 0;

void report(int index, const std::string& label, bool ok,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", index,
              label.c_str(), detail.c_str());
  if (!ok) ++failures;
}

std::vector<Eigen::VectorXd> grid_points(const ChartMap& chart, int n) {
  const int d = chart.dim();
  std::vector<Eigen::VectorXd> pts;
  std::vector<int> idx(d, 0);
  for (;;) {
    Eigen::VectorXd u(d);
    for (int i = 0; i < d; ++i) {
      u[i] = chart.axes[i].lo +
             (idx[i] + 0.5) / n * chart.axes[i].length();
    }
    pts.push_back(u);
    int k = d - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) break;
  }
  return pts;
}

double sweep_max(const ChartMap& chart, const std::vector<std::string>& ids,
                 int n, bool enforce = true) {
  double worst = 0.0;
  for (const auto& u : grid_points(chart, n))
    for (const auto& id : ids)
      worst = std::max(worst,
                       run_pointwise_check(chart, u, id, 4, enforce));
  return worst;
}

struct NamedModel {
  ModelSpec spec;
  int grid2d, grid3d;
};

std::vector<NamedModel> five_models() {
  return {
      {ModelSpec::sphere(0.0, 2, 1.0), 32, 11},
      {ModelSpec::sphere(1.0, 3, 0.8), 32, 11},
      {ModelSpec::product_spheres(1, 2, 0.6, 0.8), 32, 11},
      {ModelSpec::torus(2.0, 1.0), 32, 11},
      {ModelSpec::ellipsoid({2.0, 1.0, 1.0}), 32, 11},
  };
}

std::vector<ModelSpec> all_models() {
  return {ModelSpec::sphere(0.0, 2, 1.0),
          ModelSpec::sphere(1.0, 3, 0.8),
          ModelSpec::sphere(-1.0, 2, 0.7),
          ModelSpec::product_spheres(1, 2, 0.6, 0.8),
          ModelSpec::torus(2.0, 1.0),
          ModelSpec::ellipsoid({2.0, 1.0, 1.0}),
          ModelSpec::radial_graph(2, 1.0, 0.15, 2)};
}

int grid_for(const ModelSpec& spec, const NamedModel& nm) {
  return spec.m == 2 ? nm.grid2d : nm.grid3d;
}

void criterion_divergence_free() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& nm : five_models()) {
    auto chart = instantiate(nm.spec);
    worst = std::max(
        worst, sweep_max(chart, {"div_phi"}, grid_for(nm.spec, nm)));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  char detail[128];
  std::snprintf(detail, sizeof(detail), "max residual %.3e, %.1f s", worst,
                secs);
  report(1, "divergence-free cubic tensor on five models", worst <= 1e-6 &&
             secs <= 60.0, detail);
}

void criterion_power_identities() {
  double worst = 0.0;
  for (const auto& nm : five_models()) {
    auto chart = instantiate(nm.spec);
    const int n = nm.spec.m == 2 ? 12 : 6;
    worst = std::max(worst, sweep_max(chart,
                                      {"grad_trace_power_2",
                                       "grad_trace_power_3", "div_A2",
                                       "div_A3"},
                                      n));
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max residual %.3e", worst);
  report(2, "trace-power gradient and power divergences", worst <= 1e-6,
         detail);
}

void criterion_kato() {
  int violations = 0;
  double worst = 0.0;
  for (const auto& spec : all_models()) {
    auto chart = instantiate(spec);
    const int n = spec.m == 2 ? 12 : 6;
    for (const auto& u : grid_points(chart, n)) {
      const double r = run_pointwise_check(chart, u, "kato");
      worst = std::max(worst, r);
      if (r > 1e-12) ++violations;
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%d violations, max excess %.3e",
                violations, worst);
  report(3, "Kato inequality on every sample point", violations == 0, detail);
}

void criterion_simons() {
  double worst = 0.0;
  for (const auto& spec : all_models()) {
    auto chart = instantiate(spec);
    const int n = spec.m == 2 ? 12 : 6;
    worst = std::max(worst, sweep_max(chart, {"simons"}, n));
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max residual %.3e", worst);
  report(4, "Simons-type identity with order-4 jets", worst <= 1e-5, detail);
}

void criterion_operator_integrals() {
  bool ok = true;
  double worst = 0.0;
  IntegralOptions opt;
  opt.points_per_axis = 32;
  const std::vector<std::string> ids = {
      "box_zero_t1_f",  "box_zero_t1_x0",  "box_zero_t2_f",
      "box_zero_t2_x0", "box_zero_phi_f",  "box_zero_phi_x0",
      "box_selfadjoint_t1", "box_selfadjoint_t2", "box_selfadjoint_phi"};
  for (const auto& spec :
       {ModelSpec::ellipsoid({2.0, 1.0, 1.0}), ModelSpec::torus(2.0, 1.0)}) {
    auto chart = instantiate(spec);
    for (const auto& id : ids) {
      auto res = run_integral_check(chart, id, opt);
      const double tol = std::max(1e-5, 3.0 * res.error_estimate);
      worst = std::max(worst, std::abs(res.value));
      if (std::abs(res.value) > tol) ok = false;
    }
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "max |integral| %.3e", worst);
  report(5, "vanishing operator integrals and self-adjointness", ok, detail);
}

void criterion_oracles() {
  bool ok = true;
  double worst_rel = 0.0;
  std::mt19937 rng(314159);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  for (const auto& spec :
       {ModelSpec::sphere(0.0, 2, 1.0), ModelSpec::sphere(1.0, 3, 0.8),
        ModelSpec::sphere(-1.0, 2, 0.7),
        ModelSpec::product_spheres(1, 2, 0.6, 0.8), ModelSpec::torus(2.0, 1.0)}) {
    auto chart = instantiate(spec);
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd u(chart.dim());
      for (int i = 0; i < chart.dim(); ++i)
        u[i] = chart.axes[i].lo + unif(rng) * chart.axes[i].length();
      GeometryFrame fr = frame_at(chart, u, 3);
      ExpectedFrame ex = expected_frame(spec, u);
      auto rel = [](double a, double b) {
        return std::abs(a - b) / (1.0 + std::abs(b));
      };
      double r = std::max({rel(fr.f, ex.f), rel(fr.normA2, ex.normA2),
                           rel(fr.traceA3, ex.traceA3)});
      for (int i = 0; i < fr.lambda.size(); ++i)
        r = std::max(r, rel(fr.lambda[i], ex.lambda[i]));
      worst_rel = std::max(worst_rel, r);
      if (r > 1e-8) ok = false;
    }
  }
  IntegralOptions opt;
  opt.points_per_axis = 32;
  const double area_s =
      chart_volume(instantiate(ModelSpec::sphere(0.0, 2, 1.0)), opt).value;
  const double area_t =
      chart_volume(instantiate(ModelSpec::torus(2.0, 1.0)), opt).value;
  const double rel_s = std::abs(area_s - 4.0 * M_PI) / (4.0 * M_PI);
  const double rel_t =
      std::abs(area_t - 8.0 * M_PI * M_PI) / (8.0 * M_PI * M_PI);
  if (rel_s > 1e-6 || rel_t > 1e-6) ok = false;
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "max frame rel err %.3e, area rel err %.3e/%.3e", worst_rel,
                rel_s, rel_t);
  report(6, "closed-form oracle agreement and reference areas", ok, detail);
}

void criterion_okumura_monte_carlo() {
  std::mt19937 rng(271828);
  std::uniform_real_distribution<double> base(-2.0, 2.0);
  std::uniform_real_distribution<double> spread(0.0, 0.6);
  std::uniform_int_distribution<int> mdist(3, 8);
  std::uniform_int_distribution<int> cdist(-1, 1);
  double min_conclusion = 0.0;
  long accepted = 0;
  while (accepted < 100000) {
    const int m = mdist(rng);
    const double c = static_cast<double>(cdist(rng));
    double b = base(rng);
    if (c < 0.0 && std::abs(b) < 1.05) b = (b < 0 ? -1.0 : 1.0) * 1.2;
    const double s = spread(rng);
    Eigen::VectorXd lambda(m);
    std::uniform_real_distribution<double> pert(-s, s);
    for (int i = 0; i < m; ++i) lambda[i] = b + pert(rng);
    const double f = lambda.mean();
    const double a2 = lambda.squaredNorm();
    bool holds = false;
    try {
      holds = okumura_bound_holds(c, f, a2, m);
    } catch (const PreconditionError&) {
      continue;
    }
    if (!holds) continue;
    ++accepted;
    min_conclusion =
        std::min(min_conclusion, okumura_conclusion_sample(c, lambda));
  }
  bool flat_ok = true;
  std::uniform_real_distribution<double> fdist(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const int m = mdist(rng);
    const double f = fdist(rng);
    const double edge = m * m * f * f / (m - 1);
    // the c = 0 bound must coincide with m^2 f^2/(m-1): inside holds,
    // epsilon outside does not
    if (!okumura_bound_holds(0.0, f, edge, m)) flat_ok = false;
    if (okumura_bound_holds(0.0, f, edge + 1e-6 * (1.0 + edge), m))
      flat_ok = false;
  }
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "min conclusion %.3e over 1e5 admissible samples",
                min_conclusion);
  report(7, "curvature-gap bound Monte Carlo", min_conclusion >= -1e-10 &&
             flat_ok, detail);
}

void criterion_product_scan() {
  bool ok = true;
  auto rows = scan_products(4, 1, 0.40, 0.60, 0.001);
  double flip = -1.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!rows[i - 1].admissible && rows[i].admissible) {
      flip = rows[i].r1;
      break;
    }
  if (std::abs(flip - 0.5) > 1e-3 + 1e-12) ok = false;
  for (int m = 7; m <= 12; ++m)
    for (const auto& row : scan_products(m, 1, 0.05, 0.95, 0.0005))
      if (row.hypothesis && !row.admissible) ok = false;
  for (int m = 2; m <= 7; ++m)
    for (const auto& row : scan_products(m, 1, 0.05, 0.95, 0.001))
      if (row.hypothesis) ok = false;
  char detail[64];
  std::snprintf(detail, sizeof(detail), "flip at r1 = %.4f", flip);
  report(8, "product-scan arithmetic", ok, detail);
}

void criterion_negative_controls() {
  bool ok = true;
  auto torus = instantiate(ModelSpec::torus(2.0, 1.0));
  double bicons_worst = 0.0, t3_torus = 0.0, int1_torus = 0.0;
  for (const auto& u : grid_points(torus, 12)) {
    bicons_worst = std::max(bicons_worst,
                            run_pointwise_check(torus, u, "biconservativity"));
    t3_torus = std::max(t3_torus,
                        run_pointwise_check(torus, u, "div_t3", 4, false));
    int1_torus = std::max(
        int1_torus, run_pointwise_check(torus, u, "pointwise_int1", 4, false));
  }
  if (bicons_worst <= 1e-3) ok = false;
  if (t3_torus <= 1e-6) ok = false;   // Div(f^2 A) must be visibly nonzero
  if (int1_torus <= 1e-6) ok = false; // the conditional identity must fail
  double t3_cmc = 0.0;
  for (const auto& spec :
       {ModelSpec::sphere(0.0, 2, 1.0), ModelSpec::sphere(1.0, 3, 0.8),
        ModelSpec::sphere(-1.0, 2, 0.7),
        ModelSpec::product_spheres(1, 2, 0.6, 0.8)}) {
    auto chart = instantiate(spec);
    t3_cmc = std::max(t3_cmc, sweep_max(chart, {"div_t3"},
                                        spec.m == 2 ? 8 : 5));
  }
  if (t3_cmc > 1e-6) ok = false;
  char detail[128];
  std::snprintf(detail, sizeof(detail),
                "torus bicons %.2e, Div(f^2A) torus %.2e / CMC %.2e",
                bicons_worst, t3_torus, t3_cmc);
  report(9, "negative controls", ok, detail);
}

void criterion_determinism() {
  SuiteOptions opt;
  opt.pointwise_points = 10;
  opt.integral_points = 16;
  opt.threads = 2;
  auto a = run_suite(ModelSpec::ellipsoid({2.0, 1.0, 1.0}), opt);
  auto b = run_suite(ModelSpec::ellipsoid({2.0, 1.0, 1.0}), opt);
  const bool ok = a.to_json().dump(2) == b.to_json().dump(2);
  report(10, "byte-identical repeated reports", ok,
         ok ? "identical" : "reports differ");
}

}  // namespace

int main() {
  criterion_divergence_free();
  criterion_power_identities();
  criterion_kato();
  criterion_simons();
  criterion_operator_integrals();
  criterion_oracles();
  criterion_okumura_monte_carlo();
  criterion_product_scan();
  criterion_negative_controls();
  criterion_determinism();
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures;
}
