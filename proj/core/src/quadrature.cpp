// SPDX-License-Identifier: Apache-2.0
#include "hypercheck/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "hypercheck/errors.hpp"

namespace hypercheck {

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw ArgumentError("gauss_legendre needs n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    weights[i] = w;
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = w;
  }
}

std::size_t QuadratureGrid::total_points() const {
  std::size_t t = 1;
  for (const auto& ax : nodes) t *= ax.size();
  return t;
}

QuadratureGrid build_grid(const ChartMap& chart, int points_per_axis) {
  return build_grid(chart,
                    std::vector<int>(chart.dim(), points_per_axis));
}

QuadratureGrid build_grid(const ChartMap& chart,
                          const std::vector<int>& points_per_axis) {
  if (static_cast<int>(points_per_axis.size()) != chart.dim())
    throw ArgumentError("per-axis resolution count must match chart dim");
  for (int n : points_per_axis)
    if (n < 4) throw ArgumentError("points_per_axis must be at least 4");
  QuadratureGrid grid;
  grid.nodes.resize(chart.dim());
  grid.weights.resize(chart.dim());
  std::vector<double> gl_x, gl_w;
  for (int i = 0; i < chart.dim(); ++i) {
    const AxisSpec& ax = chart.axes[i];
    const int n = points_per_axis[i];
    if (ax.periodic) {
      // Uniform nodes without the duplicated endpoint: spectrally accurate
      // for smooth periodic integrands.
      const double h = ax.length() / n;
      for (int k = 0; k < n; ++k) {
        grid.nodes[i].push_back(ax.lo + k * h);
        grid.weights[i].push_back(h);
      }
    } else {
      gauss_legendre(n, gl_x, gl_w);
      const double mid = 0.5 * (ax.lo + ax.hi);
      const double half = 0.5 * ax.length();
      for (int k = 0; k < n; ++k) {
        grid.nodes[i].push_back(mid + half * gl_x[k]);
        grid.weights[i].push_back(half * gl_w[k]);
      }
    }
  }
  return grid;
}

namespace {

struct Accumulator {
  std::vector<double> sums;       // one per integrand, weighted by dV
  double volume = 0.0;            // weighted measure seen by the grid
  // Boundary-slice sums per capped axis, used for the cap correction:
  // slice_val[axis][k] and slice_vol[axis] over both extreme node layers.
  std::vector<std::vector<double>> slice_val;
  std::vector<double> slice_vol;

  Accumulator(std::size_t nf, std::size_t naxes)
      : sums(nf, 0.0),
        slice_val(naxes, std::vector<double>(nf, 0.0)),
        slice_vol(naxes, 0.0) {}

  void merge(const Accumulator& o) {
    for (std::size_t k = 0; k < sums.size(); ++k) sums[k] += o.sums[k];
    volume += o.volume;
    for (std::size_t i = 0; i < slice_vol.size(); ++i) {
      slice_vol[i] += o.slice_vol[i];
      for (std::size_t k = 0; k < sums.size(); ++k)
        slice_val[i][k] += o.slice_val[i][k];
    }
  }
};

void accumulate_range(const ChartMap& chart, const QuadratureGrid& grid,
                      std::size_t nf, const BatchIntegrand& f, int order,
                      std::size_t begin, std::size_t end, Accumulator& acc) {
  const int d = chart.dim();
  std::vector<std::size_t> idx(d);
  Eigen::VectorXd u(d);
  std::vector<double> vals(nf);
  for (std::size_t flat = begin; flat < end; ++flat) {
    std::size_t rem = flat;
    for (int i = d - 1; i >= 0; --i) {
      idx[i] = rem % grid.nodes[i].size();
      rem /= grid.nodes[i].size();
    }
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      u[i] = grid.nodes[i][idx[i]];
      w *= grid.weights[i][idx[i]];
    }
    FramePoint fp(chart, u, order);
    const double dens = std::sqrt(fp.frame().g.determinant());
    const double wd = w * dens;
    acc.volume += wd;
    f(fp, vals);
    for (std::size_t k = 0; k < nf; ++k) acc.sums[k] += wd * vals[k];
    for (int i = 0; i < d; ++i) {
      if (chart.axes[i].cap_defect == 0.0) continue;
      const std::size_t n_i = grid.nodes[i].size();
      if (idx[i] != 0 && idx[i] != n_i - 1) continue;
      acc.slice_vol[i] += wd;
      for (std::size_t k = 0; k < nf; ++k) acc.slice_val[i][k] += wd * vals[k];
    }
  }
}

std::vector<double> integrate_once(const ChartMap& chart, std::size_t nf,
                                   const BatchIntegrand& f,
                                   const std::vector<int>& points_per_axis,
                                   int order, int threads) {
  const QuadratureGrid grid = build_grid(chart, points_per_axis);
  const std::size_t total = grid.total_points();
  const int nt = std::max(1, std::min<int>(threads, 32));

  // Fixed-size contiguous chunks merged in index order keep the
  // floating-point summation identical for every thread count.
  const std::size_t chunk = 256;
  const std::size_t nchunks = (total + chunk - 1) / chunk;
  std::vector<Accumulator> partial(nchunks, Accumulator(nf, chart.dim()));
  auto run_chunk = [&](std::size_t ci) {
    const std::size_t b = ci * chunk;
    const std::size_t e = std::min(total, b + chunk);
    accumulate_range(chart, grid, nf, f, order, b, e, partial[ci]);
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
  Accumulator acc(nf, chart.dim());
  for (std::size_t ci = 0; ci < nchunks; ++ci) acc.merge(partial[ci]);

  // Cap correction: each excised cap contributes (excised measure) times the
  // mean of the integrand over the matching boundary slice.
  std::vector<double> out(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    double v = acc.sums[k];
    for (int i = 0; i < chart.dim(); ++i) {
      const double defect = chart.axes[i].cap_defect;
      if (defect == 0.0 || acc.slice_vol[i] <= 0.0) continue;
      v += defect * (acc.slice_val[i][k] / acc.slice_vol[i]);
    }
    out[k] = v;
  }
  return out;
}

}  // namespace

std::vector<IntegralResult> integrate_batch(const ChartMap& chart,
                                            std::size_t count,
                                            const BatchIntegrand& f,
                                            const IntegralOptions& opt) {
  std::vector<IntegralResult> results(count);
  const std::vector<int> res_axes =
      opt.axis_points.empty()
          ? std::vector<int>(chart.dim(), opt.points_per_axis)
          : opt.axis_points;
  const std::vector<double> full =
      integrate_once(chart, count, f, res_axes, opt.jet_order, opt.threads);
  for (std::size_t k = 0; k < count; ++k) results[k].value = full[k];
  if (opt.error_estimate) {
    std::vector<int> half = res_axes;
    for (int& n : half) n = std::max(4, n / 2);
    const std::vector<double> coarse =
        integrate_once(chart, count, f, half, opt.jet_order, opt.threads);
    for (std::size_t k = 0; k < count; ++k)
      results[k].error_estimate = std::abs(full[k] - coarse[k]);
  }
  return results;
}

std::vector<IntegralResult> integrate_many(const ChartMap& chart,
                                           const std::vector<FrameIntegrand>& fs,
                                           const IntegralOptions& opt) {
  return integrate_batch(
      chart, fs.size(),
      [&fs](const FramePoint& fp, std::vector<double>& v) {
        for (std::size_t k = 0; k < fs.size(); ++k) v[k] = fs[k](fp);
      },
      opt);
}

IntegralResult integrate(const ChartMap& chart, const FrameIntegrand& f,
                         const IntegralOptions& opt) {
  return integrate_many(chart, {f}, opt)[0];
}

IntegralResult chart_volume(const ChartMap& chart,
                            const IntegralOptions& opt) {
  return integrate(
      chart, [](const FramePoint&) { return 1.0; }, opt);
}

}  // namespace hypercheck
