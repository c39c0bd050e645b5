// SPDX-License-Identifier: Apache-2.0
//
// Closed-form compact model hypersurfaces: declarative specs, chart
// instantiation through jets, and exact geometric data where a closed form
// exists (spheres, sphere products, torus). The ellipsoid and radial graph
// are generic non-CMC subjects with no oracle; only identity residuals apply.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypercheck/chart.hpp"
#include "hypercheck/frame.hpp"

#include <json.hpp>

namespace hypercheck {

struct ModelSpec {
  enum class Kind { Sphere, ProductSpheres, Torus, Ellipsoid, RadialGraph };

  Kind kind = Kind::Sphere;
  int m = 2;        // hypersurface dimension
  double c = 0.0;   // ambient curvature constant
  double r = 1.0;   // sphere radius / torus tube radius
  double R = 2.0;   // torus ring radius
  int m1 = 1, m2 = 1;
  double r1 = 0.6, r2 = 0.8;
  std::vector<double> semi_axes;  // ellipsoid, size m+1
  double rg_base = 1.0, rg_amp = 0.15;
  int rg_freq = 2;  // radial graph rho = base + amp*cos(freq*theta_0)

  static ModelSpec sphere(double c, int m, double r);
  static ModelSpec product_spheres(int m1, int m2, double r1, double r2);
  static ModelSpec torus(double R, double r);
  static ModelSpec ellipsoid(std::vector<double> axes);
  static ModelSpec radial_graph(int m, double base, double amp, int freq);

  /// Build a spec from a CLI model name plus key=value parameter overrides.
  static ModelSpec from_name(const std::string& name,
                             const std::map<std::string, double>& params);

  void validate() const;  // throws SpecError on violated invariants
  std::string name() const;
  bool has_closed_form() const;
};

void to_json(nlohmann::ordered_json& j, const ModelSpec& spec);
ModelSpec model_from_json(const nlohmann::ordered_json& j);

/// Chart realization; fixes the normal orientation per model.
ChartMap instantiate(const ModelSpec& spec);

/// Exact pointwise data for closed-form models.
struct ExpectedFrame {
  Eigen::VectorXd lambda;  // ascending
  double f = 0.0, normA2 = 0.0, traceA3 = 0.0;
};
ExpectedFrame expected_frame(const ModelSpec& spec, const Eigen::VectorXd& u);

std::vector<std::string> catalog_model_names();

// Closed-form 1D ingredients shared with the quadrature cap bookkeeping.
double sin_power_integral(int k, double x);  // int_0^x sin^k t dt
double sin_power_full(int k);                // int_0^pi sin^k t dt
double unit_sphere_area(int d);              // area of the unit d-sphere

}  // namespace hypercheck
