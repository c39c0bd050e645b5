// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles for the test suite: Richardson-extrapolated central
// differences and a from-scratch finite-difference torus geometry that never
// touches the jet pipeline.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

namespace oracles {

// Central difference with one Richardson step: error O(h^4).
inline double richardson_d1(const std::function<double(double)>& f, double x,
                            double h = 1e-3) {
  auto d = [&](double hh) { return (f(x + hh) - f(x - hh)) / (2.0 * hh); };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

inline double richardson_d2(const std::function<double(double)>& f, double x,
                            double h = 1e-3) {
  auto d = [&](double hh) {
    return (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
  };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Mixed second partial d^2 f / dx_i dx_j of a multivariate function.
inline double richardson_d2_mixed(
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, int i, int j, double h = 1e-3) {
  if (i == j) {
    return richardson_d2(
        [&](double t) {
          Eigen::VectorXd y = x;
          y[i] = t;
          return f(y);
        },
        x[i], h);
  }
  auto d = [&](double hh) {
    Eigen::VectorXd y = x;
    auto at = [&](double a, double b) {
      y = x;
      y[i] += a;
      y[j] += b;
      return f(y);
    };
    return (at(hh, hh) - at(hh, -hh) - at(-hh, hh) + at(-hh, -hh)) /
           (4.0 * hh * hh);
  };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

// Closed-form geometry of the ring torus (R + r cos v)(cos u, sin u, 0) +
// (0, 0, r sin v), derived by hand from the standard parametrization with
// the inward-bending normal (f > 0 on the outer half).
struct TorusClosedForm {
  double R, r;

  double w(double v) const { return R + r * std::cos(v); }

  Eigen::Matrix2d metric(double v) const {
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    g(0, 0) = w(v) * w(v);
    g(1, 1) = r * r;
    return g;
  }

  double lambda_u(double v) const { return std::cos(v) / w(v); }
  double lambda_v() const { return 1.0 / r; }
  double mean_curvature(double v) const {
    return 0.5 * (lambda_u(v) + lambda_v());
  }
  double normA2(double v) const {
    return lambda_u(v) * lambda_u(v) + 1.0 / (r * r);
  }
  double traceA3(double v) const {
    return std::pow(lambda_u(v), 3) + std::pow(1.0 / r, 3);
  }

  // Nonzero Christoffel symbols: Gamma^u_{uv} = -r sin v / w,
  // Gamma^v_{uu} = w sin v / r.
  double gamma_u_uv(double v) const { return -r * std::sin(v) / w(v); }
  double gamma_v_uu(double v) const { return w(v) * std::sin(v) / r; }

  // df/dv and the raised gradient component grad^v f.
  double df_dv(double v) const {
    return -0.5 * R * std::sin(v) / (w(v) * w(v));
  }
  double grad_f_v(double v) const { return df_dv(v) / (r * r); }
};

// Finite-difference frame for an arbitrary R^3 surface chart, built only
// from point evaluations: tangents and their derivatives by Richardson
// differences, normal by cross product.
struct SurfaceFD {
  std::function<Eigen::Vector3d(double, double)> phi;

  Eigen::Vector3d tangent(double u, double v, int axis, double h = 1e-4) const {
    auto comp = [&](int k) {
      return richardson_d1(
          [&](double t) {
            return axis == 0 ? phi(t, v)[k] : phi(u, t)[k];
          },
          axis == 0 ? u : v, h);
    };
    return {comp(0), comp(1), comp(2)};
  }

  Eigen::Matrix2d metric(double u, double v) const {
    const Eigen::Vector3d tu = tangent(u, v, 0), tv = tangent(u, v, 1);
    Eigen::Matrix2d g;
    g << tu.dot(tu), tu.dot(tv), tv.dot(tu), tv.dot(tv);
    return g;
  }

  Eigen::Vector3d normal(double u, double v) const {
    const Eigen::Vector3d tu = tangent(u, v, 0), tv = tangent(u, v, 1);
    return tu.cross(tv).normalized();
  }

  // Second fundamental form h_ij = <d_i d_j phi, n>.
  Eigen::Matrix2d second_form(double u, double v, double h = 1e-3) const {
    const Eigen::Vector3d n = normal(u, v);
    Eigen::Matrix2d out;
    Eigen::Vector2d x(u, v);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Eigen::Vector3d dd;
        for (int k = 0; k < 3; ++k) {
          dd[k] = richardson_d2_mixed(
              [&](const Eigen::VectorXd& y) {
                return phi(y[0], y[1])[k];
              },
              x, i, j, h);
        }
        out(i, j) = dd.dot(n);
      }
    return out;
  }

  Eigen::Matrix2d shape_operator(double u, double v) const {
    return metric(u, v).inverse() * second_form(u, v);
  }
};

}  // namespace oracles
