// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "hypercheck/catalog.hpp"
#include "hypercheck/tensors.hpp"
#include "oracles.hpp"

using namespace hypercheck;

namespace {

ChartMap torus_chart() { return instantiate(ModelSpec::torus(2.0, 1.0)); }

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("gradient of f on the torus matches the closed form") {
  const oracles::TorusClosedForm oracle{2.0, 1.0};
  auto chart = torus_chart();
  for (double v : {0.4, 1.7, 3.5, 5.2}) {
    Eigen::VectorXd u(2);
    u << 2.0, v;
    auto d = scalar_derivatives(chart, u, field_f());
    CHECK(d.value == doctest::Approx(oracle.mean_curvature(v)).epsilon(1e-12));
    CHECK(std::abs(d.grad[0]) < 1e-12);  // f is independent of the ring angle
    CHECK(d.grad[1] == doctest::Approx(oracle.grad_f_v(v)).epsilon(1e-11));
  }
}

TEST_CASE("covariant Hessian of f on the torus against a finite-difference oracle") {
  // Independent construction: partials of f(v) by Richardson differences,
  // Christoffel correction from the closed-form symbols.
  const oracles::TorusClosedForm oracle{2.0, 1.0};
  auto chart = torus_chart();
  const double v0 = 1.1;
  Eigen::VectorXd u(2);
  u << 0.6, v0;
  auto d = scalar_derivatives(chart, u, field_f());

  auto fval = [&](double v) { return oracle.mean_curvature(v); };
  const double df = oracles::richardson_d1(fval, v0);
  const double d2f = oracles::richardson_d2(fval, v0);
  // Hess_{vv} = d2f (Gamma^u_{vv} = Gamma^v_{vv} = 0),
  // Hess_{uu} = -Gamma^v_{uu} df, Hess_{uv} = 0 since du f = 0.
  CHECK(d.hess(1, 1) == doctest::Approx(d2f).epsilon(1e-7));
  CHECK(d.hess(0, 0) ==
        doctest::Approx(-oracle.gamma_v_uu(v0) * df).epsilon(1e-7));
  CHECK(std::abs(d.hess(0, 1)) < 1e-9);
  // Laplacian = g^{uu} Hess_uu + g^{vv} Hess_vv.
  const Eigen::Matrix2d g = oracle.metric(v0);
  CHECK(d.laplacian ==
        doctest::Approx(d.hess(0, 0) / g(0, 0) + d.hess(1, 1) / g(1, 1))
            .epsilon(1e-10));
}

TEST_CASE("CMC models have vanishing grad f") {
  for (const auto& spec :
       {ModelSpec::sphere(1.0, 3, 0.8),
        ModelSpec::product_spheres(2, 3, 0.55, std::sqrt(1.0 - 0.55 * 0.55))}) {
    auto chart = instantiate(spec);
    auto d = scalar_derivatives(chart, chart.point_at_fraction(0.37), field_f());
    CHECK(d.grad.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(d.hess.cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(d.laplacian) < 1e-9);
  }
}

TEST_CASE("ambient coordinate field restricts the flat-model coordinate") {
  auto chart = instantiate(ModelSpec::ellipsoid({2.0, 1.0, 1.0}));
  Eigen::VectorXd u(2);
  u << 1.2, 0.7;
  FramePoint fp(chart, u, 4);
  auto d0 = scalar_derivatives(chart, u, field_ambient_coordinate(0));
  CHECK(d0.value == doctest::Approx(fp.position(0).value()).epsilon(1e-14));
  // grad of the restriction is the tangential projection: check |grad x_a|^2
  // + <eta, e_a>^2 = |e_a|^2 = 1 in R^3.
  const GeometryFrame& fr = fp.frame();
  const double nrm2 = fp.vnorm2(d0.grad);
  CHECK(nrm2 + fr.eta[0] * fr.eta[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cheng_yau_apply with Phi = Id equals the Laplacian") {
  auto chart = torus_chart();
  Eigen::VectorXd u(2);
  u << 1.9, 2.6;
  FramePoint fp(chart, u, 4);
  const double lap = scalar_derivatives(chart, u, field_normA2()).laplacian;
  CHECK(cheng_yau_apply(fp, tensor_identity(), field_normA2()) ==
        doctest::Approx(lap).epsilon(1e-11));
}

TEST_CASE("divergence of a pure-trace tensor is the gradient of its scalar") {
  // Div(s Id) = grad s for any scalar s; take s = f^2 on the torus.
  auto chart = torus_chart();
  Eigen::VectorXd u(2);
  u << 0.4, 1.3;
  FramePoint fp(chart, u, 4);
  TensorField11 sId{"f2_id", [](const FramePoint& p) {
                      std::vector<Jet> out = p.identity_jets();
                      Jet f2 = p.mean_curvature() * p.mean_curvature();
                      for (auto& t : out) t = t * f2;
                      return out;
                    }};
  Eigen::VectorXd div = divergence_11(fp, sId);
  Eigen::VectorXd grad = scalar_derivatives(chart, u, field_f_squared()).grad;
  CHECK((div - grad).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("product rule for Div(f^2 A) on the torus") {
  // Div(f^2 A) = A(grad f^2) + f^2 Div A, with Div A = m grad f by the
  // traced Codazzi equation.
  auto chart = torus_chart();
  Eigen::VectorXd u(2);
  u << 2.8, 0.9;
  FramePoint fp(chart, u, 4);
  const GeometryFrame& fr = fp.frame();
  TensorField11 f2A{"f2A", [](const FramePoint& p) {
                      std::vector<Jet> out = p.shape_op();
                      Jet f2 = p.mean_curvature() * p.mean_curvature();
                      for (auto& t : out) t = t * f2;
                      return out;
                    }};
  Eigen::VectorXd lhs = divergence_11(fp, f2A);
  Eigen::VectorXd gf = scalar_derivatives(chart, u, field_f()).grad;
  Eigen::VectorXd rhs =
      2.0 * fr.f * (fr.A * gf) + fr.f * fr.f * fp.m() * gf;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("named tensor fields recompose from their ingredients") {
  auto chart = instantiate(ModelSpec::radial_graph(2, 1.0, 0.15, 2));
  Eigen::VectorXd u(2);
  u << 1.4, 2.2;
  FramePoint fp(chart, u, 4);
  const GeometryFrame& fr = fp.frame();
  const int m = fp.m();
  Eigen::MatrixXd T2 = tensor_values(fp, tensor_T2());
  Eigen::MatrixXd ref =
      m * fr.f * Eigen::MatrixXd::Identity(m, m) - fr.A;
  CHECK((T2 - ref).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::MatrixXd A2 = tensor_values(fp, tensor_A2());
  CHECK((A2 - fr.A * fr.A).cwiseAbs().maxCoeff() < 1e-11);
}

}  // TEST_SUITE
