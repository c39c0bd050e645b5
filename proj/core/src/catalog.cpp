// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypercheck {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPolarOffset = 1e-3;       // sphere-family charts
constexpr double kPolarOffsetTiny = 1e-5;   // models without closed-form caps

// Spherical chart of the unit d-sphere from angles u[first..first+d-1]:
// x_i = (prod_{j<i} sin t_j) cos t_i, x_d = prod_j sin t_j.
std::vector<Jet> unit_sphere_jets(const Eigen::VectorXd& u, int first, int d,
                                  int jet_dim, int order) {
  std::vector<Jet> out;
  out.reserve(d + 1);
  Jet prefix = Jet::constant(1.0, jet_dim, order);
  for (int i = 0; i < d; ++i) {
    Jet t = Jet::variable(first + i, u[first + i], jet_dim, order);
    out.push_back(prefix * cos(t));
    prefix = prefix * sin(t);
  }
  out.push_back(prefix);
  return out;
}

// Axes of the unit d-sphere chart starting at `first`: polar angles on
// [delta, pi-delta], final azimuth periodic on [0, 2pi). Cap defects are
// attributed per polar axis as total_volume * (1 - I_k(delta)/F_k).
void append_sphere_axes(std::vector<AxisSpec>& axes, int d, double delta,
                        double total_volume) {
  for (int i = 0; i < d - 1; ++i) {
    AxisSpec ax;
    ax.lo = delta;
    ax.hi = kPi - delta;
    ax.periodic = false;
    const int k = d - 1 - i;  // sin-power of this angle in the density
    if (total_volume > 0.0) {
      const double full = sin_power_full(k);
      const double trunc =
          sin_power_integral(k, kPi - delta) - sin_power_integral(k, delta);
      ax.cap_defect = total_volume * (1.0 - trunc / full);
    }
    axes.push_back(ax);
  }
  AxisSpec az;
  az.lo = 0.0;
  az.hi = 2.0 * kPi;
  az.periodic = true;
  axes.push_back(az);
}

double clamp_param(const std::map<std::string, double>& params,
                   const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

double sin_power_integral(int k, double x) {
  if (k == 0) return x;
  if (k == 1) return 1.0 - std::cos(x);
  return (-std::pow(std::sin(x), k - 1) * std::cos(x) +
          (k - 1) * sin_power_integral(k - 2, x)) /
         k;
}

double sin_power_full(int k) { return sin_power_integral(k, kPi); }

double unit_sphere_area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * (d + 1)) / std::tgamma(0.5 * (d + 1));
}

ModelSpec ModelSpec::sphere(double c, int m, double r) {
  ModelSpec s;
  s.kind = Kind::Sphere;
  s.c = c;
  s.m = m;
  s.r = r;
  return s;
}

ModelSpec ModelSpec::product_spheres(int m1, int m2, double r1, double r2) {
  ModelSpec s;
  s.kind = Kind::ProductSpheres;
  s.c = 1.0;
  s.m = m1 + m2;
  s.m1 = m1;
  s.m2 = m2;
  s.r1 = r1;
  s.r2 = r2;
  return s;
}

ModelSpec ModelSpec::torus(double R, double r) {
  ModelSpec s;
  s.kind = Kind::Torus;
  s.c = 0.0;
  s.m = 2;
  s.R = R;
  s.r = r;
  return s;
}

ModelSpec ModelSpec::ellipsoid(std::vector<double> axes) {
  ModelSpec s;
  s.kind = Kind::Ellipsoid;
  s.c = 0.0;
  s.m = static_cast<int>(axes.size()) - 1;
  s.semi_axes = std::move(axes);
  return s;
}

ModelSpec ModelSpec::radial_graph(int m, double base, double amp, int freq) {
  ModelSpec s;
  s.kind = Kind::RadialGraph;
  s.c = 0.0;
  s.m = m;
  s.rg_base = base;
  s.rg_amp = amp;
  s.rg_freq = freq;
  return s;
}

ModelSpec ModelSpec::from_name(const std::string& name,
                               const std::map<std::string, double>& params) {
  if (name == "sphere") {
    return sphere(clamp_param(params, "c", 0.0),
                  static_cast<int>(clamp_param(params, "m", 2)),
                  clamp_param(params, "r", 1.0));
  }
  if (name == "product" || name == "product_spheres") {
    const int m1 = static_cast<int>(clamp_param(params, "m1", 1));
    const int m2 = static_cast<int>(clamp_param(params, "m2", 2));
    const double r1 = clamp_param(params, "r1", 0.6);
    const double r2 =
        clamp_param(params, "r2", std::sqrt(std::max(0.0, 1.0 - r1 * r1)));
    return product_spheres(m1, m2, r1, r2);
  }
  if (name == "torus") {
    return torus(clamp_param(params, "R", 2.0), clamp_param(params, "r", 1.0));
  }
  if (name == "ellipsoid") {
    std::vector<double> axes;
    const char* keys = "abcdefghi";
    for (int i = 0; keys[i]; ++i) {
      auto it = params.find(std::string(1, keys[i]));
      if (it == params.end()) break;
      axes.push_back(it->second);
    }
    if (axes.empty()) axes = {2.0, 1.0, 1.0};
    return ellipsoid(std::move(axes));
  }
  if (name == "radial_graph") {
    return radial_graph(static_cast<int>(clamp_param(params, "m", 2)),
                        clamp_param(params, "base", 1.0),
                        clamp_param(params, "amp", 0.15),
                        static_cast<int>(clamp_param(params, "freq", 2)));
  }
  std::string valid;
  for (const auto& n : catalog_model_names()) valid += " " + n;
  throw SpecError("unknown model '" + name + "'; valid models:" + valid);
}

void ModelSpec::validate() const {
  if (m < 2) throw SpecError("hypersurface dimension must be >= 2");
  switch (kind) {
    case Kind::Sphere:
      if (!(r > 0.0)) throw SpecError("sphere radius must be positive");
      if (c == 1.0 && !(r < 1.0))
        throw SpecError("small sphere in the unit sphere needs r in (0,1)");
      if (c != -1.0 && c != 0.0 && c != 1.0)
        throw SpecError("curvature constant must be -1, 0, or +1");
      break;
    case Kind::ProductSpheres:
      if (m1 < 1 || m2 < 1 || m1 + m2 != m)
        throw SpecError("product multiplicities must be >= 1 and sum to m");
      if (!(r1 > 0.0) || !(r2 > 0.0))
        throw SpecError("product radii must be positive");
      if (std::abs(r1 * r1 + r2 * r2 - 1.0) > 1e-12)
        throw SpecError("product radii must satisfy r1^2 + r2^2 = 1");
      break;
    case Kind::Torus:
      if (!(r > 0.0) || !(r < R))
        throw SpecError("torus radii must satisfy 0 < r < R");
      break;
    case Kind::Ellipsoid:
      if (static_cast<int>(semi_axes.size()) != m + 1)
        throw SpecError("ellipsoid needs m+1 semi-axes");
      for (double a : semi_axes)
        if (!(a > 0.0)) throw SpecError("ellipsoid semi-axes must be positive");
      break;
    case Kind::RadialGraph:
      if (!(rg_base - std::abs(rg_amp) > 0.0))
        throw SpecError("radial graph needs rho > 0 on the whole domain");
      break;
  }
}

std::string ModelSpec::name() const {
  auto num = [](double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
  };
  switch (kind) {
    case Kind::Sphere:
      return "sphere(c=" + num(c) + ",m=" + std::to_string(m) +
             ",r=" + num(r) + ")";
    case Kind::ProductSpheres:
      return "product(" + std::to_string(m1) + "," + std::to_string(m2) +
             "," + num(r1) + "," + num(r2) + ")";
    case Kind::Torus:
      return "torus(" + num(R) + "," + num(r) + ")";
    case Kind::Ellipsoid: {
      std::string s = "ellipsoid(";
      for (std::size_t i = 0; i < semi_axes.size(); ++i)
        s += (i ? "," : "") + num(semi_axes[i]);
      return s + ")";
    }
    case Kind::RadialGraph:
      return "radial_graph(m=" + std::to_string(m) + ",base=" + num(rg_base) +
             ",amp=" + num(rg_amp) + ",freq=" + std::to_string(rg_freq) + ")";
  }
  return "?";
}

bool ModelSpec::has_closed_form() const {
  return kind == Kind::Sphere || kind == Kind::ProductSpheres ||
         kind == Kind::Torus;
}

void to_json(nlohmann::ordered_json& j, const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelSpec::Kind::Sphere:
      j = {{"kind", "sphere"}, {"c", spec.c}, {"m", spec.m}, {"r", spec.r}};
      break;
    case ModelSpec::Kind::ProductSpheres:
      j = {{"kind", "product_spheres"},
           {"m1", spec.m1},
           {"m2", spec.m2},
           {"r1", spec.r1},
           {"r2", spec.r2}};
      break;
    case ModelSpec::Kind::Torus:
      j = {{"kind", "torus"}, {"R", spec.R}, {"r", spec.r}};
      break;
    case ModelSpec::Kind::Ellipsoid:
      j = {{"kind", "ellipsoid"}, {"semi_axes", spec.semi_axes}};
      break;
    case ModelSpec::Kind::RadialGraph:
      j = {{"kind", "radial_graph"},
           {"m", spec.m},
           {"base", spec.rg_base},
           {"amp", spec.rg_amp},
           {"freq", spec.rg_freq}};
      break;
  }
}

ModelSpec model_from_json(const nlohmann::ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sphere")
    return ModelSpec::sphere(j.at("c").get<double>(), j.at("m").get<int>(),
                             j.at("r").get<double>());
  if (kind == "product_spheres")
    return ModelSpec::product_spheres(
        j.at("m1").get<int>(), j.at("m2").get<int>(),
        j.at("r1").get<double>(), j.at("r2").get<double>());
  if (kind == "torus")
    return ModelSpec::torus(j.at("R").get<double>(), j.at("r").get<double>());
  if (kind == "ellipsoid")
    return ModelSpec::ellipsoid(j.at("semi_axes").get<std::vector<double>>());
  if (kind == "radial_graph")
    return ModelSpec::radial_graph(j.at("m").get<int>(),
                                   j.at("base").get<double>(),
                                   j.at("amp").get<double>(),
                                   j.at("freq").get<int>());
  throw SpecError("unknown model kind '" + kind + "' in model file");
}

namespace {

ChartMap build_chart(const ModelSpec& spec) {
  spec.validate();
  ChartMap chart;
  const int m = spec.m;

  switch (spec.kind) {
    case ModelSpec::Kind::Sphere: {
      chart.space = AmbientSpace(spec.c, m);
      const double vol = std::pow(spec.r, m) * unit_sphere_area(m);
      append_sphere_axes(chart.axes, m, kPolarOffset, vol);
      const double r = spec.r, c = spec.c;
      chart.evaluate = [m, r, c](const Eigen::VectorXd& u, int order) {
        auto sigma = unit_sphere_jets(u, 0, m, m, order);
        std::vector<Jet> out;
        if (c == 0.0) {
          for (auto& s : sigma) out.push_back(r * s);
        } else {
          const double x0 =
              c > 0.0 ? std::sqrt(1.0 - r * r) : std::sqrt(1.0 + r * r);
          out.push_back(Jet::constant(x0, m, order));
          for (auto& s : sigma) out.push_back(r * s);
        }
        return out;
      };
      break;
    }
    case ModelSpec::Kind::ProductSpheres: {
      chart.space = AmbientSpace(1.0, m);
      const double vol = std::pow(spec.r1, spec.m1) *
                         unit_sphere_area(spec.m1) *
                         std::pow(spec.r2, spec.m2) *
                         unit_sphere_area(spec.m2);
      append_sphere_axes(chart.axes, spec.m1, kPolarOffset, vol);
      append_sphere_axes(chart.axes, spec.m2, kPolarOffset, vol);
      const int m1 = spec.m1, m2 = spec.m2;
      const double r1 = spec.r1, r2 = spec.r2;
      chart.evaluate = [m, m1, m2, r1, r2](const Eigen::VectorXd& u,
                                           int order) {
        auto s1 = unit_sphere_jets(u, 0, m1, m, order);
        auto s2 = unit_sphere_jets(u, m1, m2, m, order);
        std::vector<Jet> out;
        for (auto& s : s1) out.push_back(r1 * s);
        for (auto& s : s2) out.push_back(r2 * s);
        return out;
      };
      break;
    }
    case ModelSpec::Kind::Torus: {
      chart.space = AmbientSpace(0.0, 2);
      chart.axes = {{0.0, 2.0 * kPi, true, 0.0}, {0.0, 2.0 * kPi, true, 0.0}};
      const double R = spec.R, r = spec.r;
      chart.evaluate = [R, r](const Eigen::VectorXd& u, int order) {
        Jet a = Jet::variable(0, u[0], 2, order);
        Jet b = Jet::variable(1, u[1], 2, order);
        Jet ring = R + r * cos(b);
        return std::vector<Jet>{ring * cos(a), ring * sin(a), r * sin(b)};
      };
      break;
    }
    case ModelSpec::Kind::Ellipsoid: {
      chart.space = AmbientSpace(0.0, m);
      append_sphere_axes(chart.axes, m, kPolarOffsetTiny, 0.0);
      const std::vector<double> axes = spec.semi_axes;
      chart.evaluate = [m, axes](const Eigen::VectorXd& u, int order) {
        auto sigma = unit_sphere_jets(u, 0, m, m, order);
        std::vector<Jet> out;
        for (std::size_t a = 0; a < sigma.size(); ++a)
          out.push_back(axes[a] * sigma[a]);
        return out;
      };
      break;
    }
    case ModelSpec::Kind::RadialGraph: {
      chart.space = AmbientSpace(0.0, m);
      append_sphere_axes(chart.axes, m, kPolarOffsetTiny, 0.0);
      const double base = spec.rg_base, amp = spec.rg_amp;
      const int freq = spec.rg_freq;
      chart.evaluate = [m, base, amp, freq](const Eigen::VectorXd& u,
                                            int order) {
        auto sigma = unit_sphere_jets(u, 0, m, m, order);
        Jet t0 = Jet::variable(0, u[0], m, order);
        Jet rho = base + amp * cos(static_cast<double>(freq) * t0);
        std::vector<Jet> out;
        for (auto& s : sigma) out.push_back(rho * s);
        return out;
      };
      break;
    }
  }
  return chart;
}

}  // namespace

ChartMap instantiate(const ModelSpec& spec) {
  ChartMap chart = build_chart(spec);

  // Fix the orientation once per model: match the closed-form principal
  // curvatures where an oracle exists, otherwise make f >= 0 at a reference
  // point. The sign multiplies a formula that is continuous over the chart.
  for (double frac : {0.4, 0.25, 0.6}) {
    const Eigen::VectorXd u = chart.point_at_fraction(frac);
    GeometryFrame fr = frame_at(chart, u, 3);
    if (spec.has_closed_form()) {
      const ExpectedFrame exp = expected_frame(spec, u);
      Eigen::VectorXd flipped = -fr.lambda;
      std::sort(flipped.data(), flipped.data() + flipped.size());
      const double err_keep = (fr.lambda - exp.lambda).norm();
      const double err_flip = (flipped - exp.lambda).norm();
      chart.normal_sign = err_keep <= err_flip ? 1.0 : -1.0;
      break;
    }
    if (std::abs(fr.f) > 1e-9) {
      chart.normal_sign = fr.f > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  return chart;
}

ExpectedFrame expected_frame(const ModelSpec& spec, const Eigen::VectorXd& u) {
  spec.validate();
  ExpectedFrame e;
  const int m = spec.m;
  switch (spec.kind) {
    case ModelSpec::Kind::Sphere: {
      double lam;
      if (spec.c == 0.0)
        lam = 1.0 / spec.r;
      else if (spec.c > 0.0)
        lam = std::sqrt(1.0 - spec.r * spec.r) / spec.r;
      else
        lam = std::sqrt(1.0 + spec.r * spec.r) / spec.r;
      e.lambda = Eigen::VectorXd::Constant(m, lam);
      break;
    }
    case ModelSpec::Kind::ProductSpheres: {
      const double l1 = -spec.r2 / spec.r1;
      const double l2 = spec.r1 / spec.r2;
      e.lambda = Eigen::VectorXd(m);
      for (int i = 0; i < spec.m1; ++i) e.lambda[i] = l1;
      for (int i = 0; i < spec.m2; ++i) e.lambda[spec.m1 + i] = l2;
      std::sort(e.lambda.data(), e.lambda.data() + m);
      break;
    }
    case ModelSpec::Kind::Torus: {
      const double v = u[1];
      const double l1 = std::cos(v) / (spec.R + spec.r * std::cos(v));
      const double l2 = 1.0 / spec.r;
      e.lambda = Eigen::VectorXd(2);
      e.lambda << std::min(l1, l2), std::max(l1, l2);
      break;
    }
    default:
      throw UnsupportedError("model '" + spec.name() +
                             "' has no closed-form frame");
  }
  e.f = e.lambda.mean();
  e.normA2 = e.lambda.squaredNorm();
  e.traceA3 = e.lambda.array().cube().sum();
  return e;
}

std::vector<std::string> catalog_model_names() {
  return {"sphere", "product_spheres", "torus", "ellipsoid", "radial_graph"};
}

}  // namespace hypercheck
