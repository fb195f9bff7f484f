#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmsim/steady.hpp"

namespace pmsim {

// Truncation policy for grid scans: either a fixed n_max, or automatic
// convergence run once at the worst-case grid point (smallest |detuning|)
// and then held fixed across the grid.
struct NmaxPolicy {
  std::optional<int> fixed = 4;
  int start = 1;
  int limit = 24;
  double rel_tol = 1e-3;
};

struct SweepPoint {
  double axis = 0.0;
  double n_s = 0.0;
  double n_i = 0.0;
  double g2 = 0.0;
  double residual = 0.0;
  int n_max = 0;
  bool ok = true;
  std::string error;  // empty when ok
};

struct SweepResult {
  std::string axis_name;
  SystemParams params;  // snapshot; the swept field varies per point
  int n_max = 0;
  std::vector<SweepPoint> points;

  bool all_ok() const;
};

// One steady solve per grid point, parallel across points, results ordered by
// axis value. Failed points are kept as explicit NaN markers, never filled in.
SweepResult detuning_sweep(const SystemParams& params, const std::vector<double>& delta_grid,
                           const NmaxPolicy& policy = {}, const SteadyOptions& opts = {},
                           int threads = 1);

// Full-precision CSV (17 significant digits, columns axis,n_s,n_i,g2,residual,
// n_max) with '#'-prefixed header lines; byte-identical for identical inputs.
void write_sweep_csv(std::ostream& os, const SweepResult& sweep,
                     const std::vector<std::string>& header_lines = {});

// JSON variant with the parameter snapshot embedded.
std::string sweep_to_json(const SweepResult& sweep,
                          const std::vector<std::pair<std::string, std::string>>& config = {});

struct ThresholdOptions {
  double delta_lo = -1.5;     // window for the dip search
  double delta_hi = 1.5;
  int coarse_points = 31;
  double delta_tol = 1e-4;    // golden-section width on the minimizer
  double g_tol = 1e-3;        // bisection width on g_eff
  NmaxPolicy nmax = {};
  SteadyOptions steady = {};
};

struct ThresholdResult {
  double g_ratio = 0.0;   // g_eff (units of gamma_s) where min g2 crosses the target
  bool degenerate = false;  // target >= 1 sits exactly at the linear system
  double min_g2_at_threshold = 0.0;
};

// Coarse-grid minimum of g2(0) over detuning refined by golden section.
double min_g2_over_delta(const SystemParams& params, const ThresholdOptions& opts = {});

// Bisection on g_eff of min_delta g2(0) - target; bracket must change sign.
ThresholdResult blockade_threshold(const SystemParams& params, double target_g2,
                                   std::pair<double, double> bracket,
                                   const ThresholdOptions& opts = {});

// Strict interior maxima with a relative prominence floor (guards against
// counting solver-level ripples as peaks).
int count_local_maxima(const std::vector<double>& y, double rel_prominence = 1e-3);

struct SplittingCurve {
  double f_s = 0.0;
  SweepResult sweep;
  std::vector<double> normalized;  // n_s / (|F_s|^2 / gamma_s)
  int n_peaks = 0;
};

// Seed response versus detuning for each drive amplitude, normalized by the
// linear-resonator estimate |F_s|^2/gamma_s of the stored photon number.
std::vector<SplittingCurve> splitting_scan(const SystemParams& params,
                                           const std::vector<double>& fs_grid,
                                           const std::vector<double>& delta_grid,
                                           const NmaxPolicy& policy = {},
                                           const SteadyOptions& opts = {}, int threads = 1);

// Scaling of Max(<n_s>) over the detuning grid while the truncation grows;
// converged when the successive relative change drops below rel_tol.
ConvergenceReport converge_max_occupation(const SystemParams& params,
                                          const std::vector<double>& delta_grid, double rel_tol,
                                          int n_max_start, int n_max_limit,
                                          const SteadyOptions& opts = {}, int threads = 1);

}  // namespace pmsim
