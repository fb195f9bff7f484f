#include "pmsim/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "parallel.hpp"

namespace pmsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_strictly_increasing(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw std::invalid_argument(std::string(what) + ": empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw std::invalid_argument(std::string(what) + ": grid must be strictly increasing");
    }
  }
}

int resolve_n_max(const SystemParams& params, const std::vector<double>& delta_grid,
                  const NmaxPolicy& policy, const SteadyOptions& opts) {
  if (policy.fixed) {
    if (*policy.fixed < 0) throw std::invalid_argument("NmaxPolicy: fixed n_max must be >= 0");
    return *policy.fixed;
  }
  // Convergence is decided once at the worst-case point (largest linear
  // response, i.e. the grid point closest to resonance) and then held fixed.
  SystemParams probe = params;
  probe.delta = *std::min_element(delta_grid.begin(), delta_grid.end(),
                                  [](double a, double b) { return std::abs(a) < std::abs(b); });
  const auto converged =
      converge_truncation(probe, {tracked_occupation(Mode::seed), tracked_g2(Mode::seed)},
                          policy.rel_tol, policy.start, policy.limit, opts);
  if (!converged.report.converged) {
    throw NonConvergence("detuning_sweep: truncation did not converge by n_max=" +
                         std::to_string(policy.limit) + " at the worst-case grid point");
  }
  return converged.report.final_n_max;
}

SweepPoint solve_point(const FockBasis& basis, const SystemParams& params, double axis_value,
                       const SteadyOptions& opts) {
  SweepPoint pt;
  pt.axis = axis_value;
  pt.n_max = basis.n_max;
  try {
    const SteadySolution sol = steady_state(seed_idler_model(basis, params), opts);
    pt.n_s = mean_occupation(sol.rho, basis, Mode::seed);
    pt.n_i = mean_occupation(sol.rho, basis, Mode::idler);
    pt.g2 = g2_zero(sol.rho, basis, Mode::seed);
    pt.residual = sol.residual;
  } catch (const std::exception& e) {
    pt.ok = false;
    pt.error = e.what();
    pt.n_s = pt.n_i = pt.g2 = pt.residual = kNaN;
  }
  return pt;
}

}  // namespace

bool SweepResult::all_ok() const {
  return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok; });
}

SweepResult detuning_sweep(const SystemParams& params, const std::vector<double>& delta_grid,
                           const NmaxPolicy& policy, const SteadyOptions& opts, int threads) {
  params.validate();
  require_strictly_increasing(delta_grid, "detuning_sweep");

  SweepResult result;
  result.axis_name = "delta_over_gamma_s";
  result.params = params;
  result.n_max = resolve_n_max(params, delta_grid, policy, opts);
  const FockBasis basis = build_basis(result.n_max);

  result.points.resize(delta_grid.size());
  detail::parallel_for(static_cast<int>(delta_grid.size()), threads, [&](int i) {
    SystemParams local = params;
    local.delta = delta_grid[i];
    result.points[i] = solve_point(basis, local, delta_grid[i], opts);
  });
  return result;
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep,
                     const std::vector<std::string>& header_lines) {
  for (const auto& line : header_lines) os << "# " << line << "\n";
  os << "axis,n_s,n_i,g2,residual,n_max\n";
  for (const auto& pt : sweep.points) {
    os << fmt17(pt.axis) << ',' << fmt17(pt.n_s) << ',' << fmt17(pt.n_i) << ',' << fmt17(pt.g2)
       << ',' << fmt17(pt.residual) << ',' << pt.n_max << "\n";
  }
}

std::string sweep_to_json(const SweepResult& sweep,
                          const std::vector<std::pair<std::string, std::string>>& config) {
  nlohmann::ordered_json j;
  j["axis_name"] = sweep.axis_name;
  j["n_max"] = sweep.n_max;
  j["params"] = {
      {"delta", sweep.params.delta},         {"f_s_re", sweep.params.f_s.real()},
      {"f_s_im", sweep.params.f_s.imag()},   {"gamma", sweep.params.gamma},
      {"gamma_s", sweep.params.gamma_s},     {"gamma_i", sweep.params.gamma_i},
      {"g_eff", sweep.params.g_eff},         {"gauge_phase", sweep.params.gauge_phase},
  };
  if (!config.empty()) {
    nlohmann::ordered_json c;
    for (const auto& [k, v] : config) c[k] = v;
    j["config"] = c;
  }
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& pt : sweep.points) {
    nlohmann::ordered_json p;
    p["axis"] = pt.axis;
    p["n_s"] = pt.n_s;  // NaN serializes as null: explicit failure marker
    p["n_i"] = pt.n_i;
    p["g2"] = pt.g2;
    p["residual"] = pt.residual;
    p["n_max"] = pt.n_max;
    p["ok"] = pt.ok;
    if (!pt.ok) p["error"] = pt.error;
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  return j.dump(2);
}

double min_g2_over_delta(const SystemParams& params, const ThresholdOptions& opts) {
  params.validate();
  if (!(opts.delta_hi > opts.delta_lo) || opts.coarse_points < 3) {
    throw std::invalid_argument("min_g2_over_delta: bad search window");
  }
  std::vector<double> grid(opts.coarse_points);
  for (int k = 0; k < opts.coarse_points; ++k) {
    grid[k] = opts.delta_lo + (opts.delta_hi - opts.delta_lo) * k / (opts.coarse_points - 1);
  }
  const int n_max = resolve_n_max(params, grid, opts.nmax, opts.steady);
  const FockBasis basis = build_basis(n_max);

  auto g2_at = [&](double delta) {
    SystemParams local = params;
    local.delta = delta;
    const SteadySolution sol = steady_state(seed_idler_model(basis, local), opts.steady);
    return g2_zero(sol.rho, basis, Mode::seed);
  };

  int best = 0;
  std::vector<double> coarse(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    coarse[k] = g2_at(grid[k]);
    if (coarse[k] < coarse[best]) best = static_cast<int>(k);
  }

  // Golden-section refinement inside the bracketing coarse cells.
  double a = grid[std::max(0, best - 1)];
  double b = grid[std::min<int>(static_cast<int>(grid.size()) - 1, best + 1)];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = g2_at(x1);
  double f2 = g2_at(x2);
  while (b - a > opts.delta_tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = g2_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = g2_at(x2);
    }
  }
  return std::min({coarse[best], f1, f2});
}

ThresholdResult blockade_threshold(const SystemParams& params, double target_g2,
                                   std::pair<double, double> bracket,
                                   const ThresholdOptions& opts) {
  params.validate();
  if (!(target_g2 > 0.0)) throw std::invalid_argument("blockade_threshold: target must be > 0");
  if (!(bracket.second > bracket.first) || bracket.first < 0.0) {
    throw std::invalid_argument("blockade_threshold: invalid bracket");
  }
  auto min_g2 = [&](double g) {
    SystemParams local = params;
    local.g_eff = g;
    return min_g2_over_delta(local, opts);
  };
  if (target_g2 >= 1.0) {
    // The linear system sits exactly at g2 = 1; the crossing degenerates to
    // the lower bracket edge.
    return ThresholdResult{bracket.first, true, min_g2(bracket.first)};
  }

  double lo = bracket.first, hi = bracket.second;
  double f_lo = min_g2(lo) - target_g2;
  double f_hi = min_g2(hi) - target_g2;
  if (f_lo * f_hi > 0.0) {
    throw std::invalid_argument("blockade_threshold: no sign change of min g2 - target in bracket");
  }
  double f_mid = 0.0;
  double mid = 0.5 * (lo + hi);
  while (hi - lo > opts.g_tol) {
    mid = 0.5 * (lo + hi);
    f_mid = min_g2(mid) - target_g2;
    if (f_lo * f_mid <= 0.0) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  mid = 0.5 * (lo + hi);
  return ThresholdResult{mid, false, f_mid + target_g2};
}

int count_local_maxima(const std::vector<double>& y, double rel_prominence) {
  const int n = static_cast<int>(y.size());
  if (n < 3) return 0;
  const double y_max = *std::max_element(y.begin(), y.end());
  const double floor = rel_prominence * std::abs(y_max);
  int count = 0;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
    double left_min = y[i];
    for (int j = i - 1; j >= 0; --j) {
      if (y[j] >= y[i]) break;
      left_min = std::min(left_min, y[j]);
    }
    double right_min = y[i];
    for (int j = i + 1; j < n; ++j) {
      if (y[j] >= y[i]) break;
      right_min = std::min(right_min, y[j]);
    }
    const double prominence = y[i] - std::max(left_min, right_min);
    if (prominence >= floor) ++count;
  }
  return count;
}

std::vector<SplittingCurve> splitting_scan(const SystemParams& params,
                                           const std::vector<double>& fs_grid,
                                           const std::vector<double>& delta_grid,
                                           const NmaxPolicy& policy, const SteadyOptions& opts,
                                           int threads) {
  params.validate();
  require_strictly_increasing(fs_grid, "splitting_scan (f_s)");
  require_strictly_increasing(delta_grid, "splitting_scan (delta)");

  std::vector<SplittingCurve> curves;
  curves.reserve(fs_grid.size());
  for (double fs : fs_grid) {
    if (!(fs > 0.0)) throw std::invalid_argument("splitting_scan: drive amplitudes must be > 0");
    SystemParams local = params;
    local.f_s = fs;
    SplittingCurve curve;
    curve.f_s = fs;
    curve.sweep = detuning_sweep(local, delta_grid, policy, opts, threads);
    const double unit = fs * fs / params.gamma_s;
    curve.normalized.reserve(curve.sweep.points.size());
    for (const auto& pt : curve.sweep.points) curve.normalized.push_back(pt.n_s / unit);
    curve.n_peaks = curve.sweep.all_ok() ? count_local_maxima(curve.normalized) : -1;
    curves.push_back(std::move(curve));
  }
  return curves;
}

ConvergenceReport converge_max_occupation(const SystemParams& params,
                                          const std::vector<double>& delta_grid, double rel_tol,
                                          int n_max_start, int n_max_limit,
                                          const SteadyOptions& opts, int threads) {
  params.validate();
  require_strictly_increasing(delta_grid, "converge_max_occupation");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("converge_max_occupation: rel_tol must be > 0");
  if (n_max_start < 1 || n_max_limit < n_max_start) {
    throw std::invalid_argument("converge_max_occupation: bad n_max range");
  }

  ConvergenceReport report;
  report.labels = {"max_n_s"};
  double prev = 0.0;
  bool have_prev = false;
  for (int n = n_max_start; n <= n_max_limit; ++n) {
    NmaxPolicy fixed;
    fixed.fixed = n;
    const SweepResult sweep = detuning_sweep(params, delta_grid, fixed, opts, threads);
    if (!sweep.all_ok()) {
      for (const auto& pt : sweep.points) {
        if (!pt.ok) {
          throw SolverError("converge_max_occupation: point delta=" + std::to_string(pt.axis) +
                            " failed at n_max=" + std::to_string(n) + ": " + pt.error);
        }
      }
    }
    double max_ns = 0.0;
    for (const auto& pt : sweep.points) max_ns = std::max(max_ns, pt.n_s);

    ConvergenceStep step;
    step.n_max = n;
    step.values = {max_ns};
    if (have_prev) {
      const double change = std::abs(max_ns - prev) / std::max(std::abs(prev), 1e-14);
      step.rel_change = {change};
      report.steps.push_back(std::move(step));
      report.final_n_max = n;
      if (change < rel_tol) {
        report.converged = true;
        prev = max_ns;
        return report;
      }
    } else {
      report.steps.push_back(std::move(step));
      report.final_n_max = n;
    }
    prev = max_ns;
    have_prev = true;
  }
  report.converged = false;
  return report;
}

}  // namespace pmsim
