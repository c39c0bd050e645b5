// SPDX-License-Identifier: Apache-2.0
//
// hypercheck CLI: model instantiation, residual suites, theorem scans,
// report emission. Exit codes: 0 all executed checks PASS/SKIP, 1 any FAIL
// or ERROR, 2 configuration/model errors.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypercheck/theorems.hpp"
#include "hypercheck/verifier.hpp"

namespace hc = hypercheck;
using nlohmann::ordered_json;

namespace {

std::map<std::string, double> parse_params(
    const std::vector<std::string>& items) {
  std::map<std::string, double> params;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw hc::ArgumentError("--param expects key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq);
      try {
        params[key] = std::stod(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw hc::ArgumentError("--param " + key + ": not a number: '" +
                                kv.substr(eq + 1) + "'");
      }
    }
  }
  return params;
}

std::vector<int> parse_grid(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int n = std::stoi(tok);
    if (n < 8) throw hc::ArgumentError("grid resolutions must be >= 8");
    out.push_back(n);
  }
  if (out.empty()) throw hc::ArgumentError("--grid needs at least one value");
  return out;
}

int default_threads() {
  if (const char* env = std::getenv("HYPERCHECK_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

hc::ModelSpec load_model(const std::string& name,
                         const std::vector<std::string>& params,
                         const std::string& model_file) {
  if (!model_file.empty()) {
    std::ifstream in(model_file);
    if (!in) throw hc::ArgumentError("cannot open model file " + model_file);
    ordered_json j;
    in >> j;
    return hc::model_from_json(j);
  }
  if (name.empty())
    throw hc::ArgumentError("--model or --model-file is required");
  return hc::ModelSpec::from_name(name, parse_params(params));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hc::ArgumentError("cannot write output file " + path);
  out << text;
}

std::string pretty_report(const hc::VerificationReport& rep) {
  std::ostringstream os;
  os << "model: " << rep.model << "\n"
     << "grid:  " << rep.grid << "  (jet order " << rep.jet_order << ")\n"
     << "biconservative: " << (rep.biconservative ? "yes" : "no")
     << "  (max residual " << rep.bicons_max << ")\n\n";
  os << "  " << std::left << std::setw(26) << "check" << std::setw(7)
     << "status" << std::setw(13) << "max" << std::setw(13) << "l2"
     << std::setw(11) << "tol"
     << "identity\n";
  for (const auto& c : rep.checks) {
    std::ostringstream mx, l2, tl;
    mx << std::scientific << std::setprecision(2) << c.residual_max;
    l2 << std::scientific << std::setprecision(2) << c.residual_l2;
    tl << std::scientific << std::setprecision(0) << c.tolerance;
    os << "  " << std::left << std::setw(26) << c.check << std::setw(7)
       << hc::status_name(c.status) << std::setw(13) << mx.str()
       << std::setw(13) << l2.str() << std::setw(11) << tl.str()
       << c.statement << "\n";
    if (!c.note.empty()) os << std::string(35, ' ') << "note: " << c.note
                            << "\n";
  }
  for (const auto& note : rep.conventions) os << "\nconvention: " << note;
  os << "\n";
  return os.str();
}

struct CommonOpts {
  std::string model, model_file, format = "pretty", output;
  std::vector<std::string> params;
  std::string grid, integral_grid;
  int jet_order = 4;
  int threads = default_threads();
  double pointwise_tol = -1.0, fourth_tol = -1.0, integral_floor = -1.0,
         bicons_threshold = -1.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--model", o.model, "catalog model name");
  cmd->add_option("--param", o.params,
                  "model parameter overrides, key=value[,key=value...]");
  cmd->add_option("--model-file", o.model_file,
                  "JSON model spec (overrides --model)");
  cmd->add_option("--grid", o.grid,
                  "per-axis resolution N or N1,N2,... (pointwise checks)");
  cmd->add_option("--integral-grid", o.integral_grid,
                  "per-axis resolution for integral checks");
  cmd->add_option("--jet-order", o.jet_order, "jet order (3 or 4)")
      ->check(CLI::Range(3, 4));
  cmd->add_option("--threads", o.threads,
                  "worker threads (env HYPERCHECK_THREADS)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "pretty | json | csv")
      ->check(CLI::IsMember({"pretty", "json", "csv"}));
  cmd->add_option("--output", o.output, "output path (default stdout)");
  cmd->add_option("--pointwise-tol", o.pointwise_tol,
                  "tolerance for pointwise residuals");
  cmd->add_option("--fourth-tol", o.fourth_tol,
                  "tolerance for fourth-order-dependent residuals");
  cmd->add_option("--integral-floor", o.integral_floor,
                  "tolerance floor for integral residuals");
  cmd->add_option("--bicons-threshold", o.bicons_threshold,
                  "max grid residual that still counts as biconservative");
}

int run_verify(const CommonOpts& o, bool pointwise, bool integrals) {
  const hc::ModelSpec spec = load_model(o.model, o.params, o.model_file);
  const hc::ChartMap chart = hc::instantiate(spec);

  hc::SuiteOptions so;
  so.jet_order = o.jet_order;
  so.threads = o.threads;
  so.run_pointwise = pointwise;
  so.run_integrals = integrals;
  if (!o.grid.empty()) {
    auto g = parse_grid(o.grid);
    if (g.size() == 1)
      so.pointwise_points = g[0];
    else
      so.pointwise_axis_points = g;
  }
  if (!o.integral_grid.empty()) {
    auto g = parse_grid(o.integral_grid);
    if (g.size() == 1)
      so.integral_points = g[0];
    else
      so.integral_axis_points = g;
  }
  if (o.pointwise_tol > 0.0) so.tol.pointwise = o.pointwise_tol;
  if (o.fourth_tol > 0.0) so.tol.fourth_order = o.fourth_tol;
  if (o.integral_floor > 0.0) so.tol.integral_floor = o.integral_floor;
  if (o.bicons_threshold > 0.0) so.tol.bicons_threshold = o.bicons_threshold;

  const hc::VerificationReport rep = hc::run_suite(spec, chart, so);
  if (o.format == "json")
    write_output(o.output, rep.to_json().dump(2) + "\n");
  else if (o.format == "csv")
    write_output(o.output, rep.to_csv());
  else
    write_output(o.output, pretty_report(rep));
  return rep.all_ok() ? 0 : 1;
}

std::string catalog_listing(const std::string& format) {
  struct Entry {
    const char* name;
    const char* params;
    const char* notes;
  };
  const Entry entries[] = {
      {"sphere", "c (-1|0|1), m, r",
       "round sphere; closed-form curvatures; CMC"},
      {"product_spheres", "m1, m2, r1 [, r2 = sqrt(1-r1^2)]",
       "S^m1(r1) x S^m2(r2) in the unit sphere; closed-form; CMC"},
      {"torus", "R, r (0 < r < R)",
       "ring torus in R^3; closed-form; non-CMC, non-biconservative"},
      {"ellipsoid", "a, b, c, ... (m+1 semi-axes)",
       "generic subject; identity residuals only"},
      {"radial_graph", "m, base, amp, freq",
       "rho(theta_0) sigma over the unit sphere; identity residuals only"},
  };
  if (format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto& e : entries)
      j.push_back({{"name", e.name},
                   {"parameters", e.params},
                   {"notes", e.notes}});
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto& e : entries) {
    os << e.name << "\n  parameters: " << e.params << "\n  " << e.notes
       << "\n";
  }
  return os.str();
}

int run_check_theorem(const std::string& which, int m, int m1, double c,
                      double f, double normA2, double r1,
                      const std::string& output) {
  std::ostringstream os;
  if (which == "1") {
    const bool ok = hc::theorem1_hypothesis(f, normA2, m);
    os << "|A|^2 <= m^2 f^2 / 6: " << (ok ? "holds" : "fails") << "  (|A|^2="
       << normA2 << ", bound=" << m * m * f * f / 6.0 << ")\n";
  } else if (which == "2") {
    const bool ok = hc::theorem2_hypothesis(f, normA2, m);
    os << "m >= 7 and |A|^2 <= m^2 f^2/(m-1): " << (ok ? "holds" : "fails")
       << "  (m=" << m << ", |A|^2=" << normA2
       << ", bound=" << m * m * f * f / (m - 1.0) << ")\n";
  } else if (which == "okumura") {
    const bool ok = hc::okumura_bound_holds(c, f, normA2, m);
    os << "adapted pinching bound: " << (ok ? "holds" : "fails") << "\n";
  } else if (which == "two-curvature") {
    const auto branch = hc::two_curvature_branch(c, m);
    if (branch)
      os << "two-curvature branch: f = " << *branch << "\n";
    else
      os << "two-curvature branch: none (relation fails for c <= 0)\n";
  } else if (which == "product") {
    const hc::ProductDetails d = hc::product_admissible({m, m1, r1});
    os << "admissible (r1 > sqrt(1/m) = " << d.r1_threshold
       << "): " << (d.admissible ? "yes" : (d.boundary ? "boundary" : "no"))
       << "\n"
       << "(1/r1^2 - 1)^2 = " << d.eq_r1_value << " vs (m-1)^2 = "
       << d.eq_r1_bound << "\n"
       << "|A|^2 = " << d.normA2 << ", m^2 f^2 / 6 = " << d.m2f2 / 6.0
       << ", pinching " << (d.hypothesis ? "holds" : "fails") << "\n"
       << "chain quantities: " << d.chain_dropped << " (dropped term), "
       << d.chain_full << " (full)\n";
  } else {
    throw hc::ArgumentError(
        "unknown theorem '" + which +
        "' (valid: 1, 2, okumura, two-curvature, product)");
  }
  write_output(output, os.str());
  return 0;
}

// Config file values fill in flags the user did not pass; flags win.
void merge_config(CLI::App& app, const std::string& path) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw hc::ArgumentError("cannot open config file " + path);
  ordered_json j;
  in >> j;
  for (auto it = j.begin(); it != j.end(); ++it) {
    CLI::Option* opt = nullptr;
    for (auto* sub : app.get_subcommands()) {
      opt = sub->get_option_no_throw("--" + it.key());
      if (opt) break;
    }
    if (!opt) opt = app.get_option_no_throw("--" + it.key());
    if (!opt) throw hc::ArgumentError("config key '" + it.key() +
                                      "' matches no flag");
    if (opt->count() > 0) continue;  // explicit flag wins
    if (it.value().is_array()) {
      for (const auto& v : it.value())
        opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    } else {
      opt->add_result(it.value().is_string() ? it.value().get<std::string>()
                                             : it.value().dump());
    }
    opt->run_callback();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypercheck: numerical verification of hypersurface "
               "curvature identities on compact models"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON config file; explicit flags win");

  CommonOpts vo, io_;
  auto* verify = app.add_subcommand(
      "verify", "run the full residual suite on a model");
  add_common(verify, vo);
  bool no_integrals = false;
  verify->add_flag("--no-integrals", no_integrals,
                   "skip the integral identities");

  auto* integrals = app.add_subcommand(
      "integrals", "run only the integral identities on a model");
  add_common(integrals, io_);

  auto* scan = app.add_subcommand(
      "scan-products",
      "scan S^m1(r1) x S^m2(r2) products over r1 (CSV: r1, |A|^2, "
      "m^2 f^2/6, hypothesis, admissible, chain quantities)");
  int scan_m = 8, scan_m1 = 1;
  double r1_min = 0.5, r1_max = 0.99, step = 1e-3;
  std::string scan_output;
  scan->add_option("--m", scan_m, "total dimension")->check(CLI::Range(2, 64));
  scan->add_option("--m1", scan_m1, "multiplicity of the first factor");
  scan->add_option("--r1-min", r1_min, "scan start");
  scan->add_option("--r1-max", r1_max, "scan end");
  scan->add_option("--step", step, "scan step");
  scan->add_option("--output", scan_output, "output path (default stdout)");

  auto* catalog = app.add_subcommand("catalog", "list the model catalog");
  std::string cat_format = "pretty", cat_output;
  catalog->add_option("--format", cat_format, "pretty | json")
      ->check(CLI::IsMember({"pretty", "json"}));
  catalog->add_option("--output", cat_output, "output path");

  auto* check = app.add_subcommand(
      "check-theorem", "evaluate a rigidity hypothesis on explicit data");
  std::string which = "1", check_output;
  int thm_m = 3, thm_m1 = 1;
  double thm_c = 1.0, thm_f = 1.0, thm_normA2 = 3.0, thm_r1 = 0.6;
  check->add_option("--theorem", which,
                    "1 | 2 | okumura | two-curvature | product");
  check->add_option("--m", thm_m, "dimension");
  check->add_option("--m1", thm_m1, "first multiplicity (product)");
  check->add_option("--c", thm_c, "ambient curvature constant");
  check->add_option("--f", thm_f, "mean curvature value");
  check->add_option("--normA2", thm_normA2, "|A|^2 value");
  check->add_option("--r1", thm_r1, "first product radius");
  check->add_option("--output", check_output, "output path");

  try {
    app.parse(argc, argv);
    merge_config(app, config_path);

    if (*verify) return run_verify(vo, true, !no_integrals);
    if (*integrals) return run_verify(io_, false, true);
    if (*scan) {
      auto rows = hc::scan_products(scan_m, scan_m1, r1_min, r1_max, step);
      write_output(scan_output, hc::scan_csv(rows));
      return 0;
    }
    if (*catalog) {
      write_output(cat_output, catalog_listing(cat_format));
      return 0;
    }
    if (*check)
      return run_check_theorem(which, thm_m, thm_m1, thm_c, thm_f,
                               thm_normA2, thm_r1, check_output);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
