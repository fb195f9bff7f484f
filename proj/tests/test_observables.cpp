#include <doctest.h>

#include <pmsim/observables.hpp>
#include <pmsim/sweeps.hpp>

#include <sstream>

#include "test_support.hpp"

using namespace pmsim;

TEST_CASE("occupation of simple states") {
  const FockBasis b = build_basis(2);
  DenseMat vacuum = DenseMat::Zero(b.dim, b.dim);
  vacuum(0, 0) = 1.0;
  CHECK(mean_occupation(vacuum, b, Mode::seed) == 0.0);
  CHECK(mean_occupation(vacuum, b, Mode::idler) == 0.0);

  DenseMat two = DenseMat::Zero(b.dim, b.dim);
  two(b.index(2, 0), b.index(2, 0)) = 1.0;
  CHECK(mean_occupation(two, b, Mode::seed) == doctest::Approx(2.0));
  CHECK(mean_occupation(two, b, Mode::idler) == 0.0);
}

TEST_CASE("occupation flags corrupted states") {
  const FockBasis b = build_basis(1);
  DenseMat rho = DenseMat::Zero(b.dim, b.dim);
  rho(b.index(1, 0), b.index(1, 0)) = Cplx(1.0, 2e-8);  // imaginary weight where n > 0
  CHECK_THROWS_AS(mean_occupation(rho, b, Mode::seed), SolverError);
}

TEST_CASE("g2 of fock and coherent states") {
  const FockBasis b = build_basis(2);
  DenseMat one = DenseMat::Zero(b.dim, b.dim);
  one(b.index(1, 0), b.index(1, 0)) = 1.0;
  CHECK(g2_zero(one, b, Mode::seed) == 0.0);

  DenseMat two = DenseMat::Zero(b.dim, b.dim);
  two(b.index(2, 0), b.index(2, 0)) = 1.0;
  CHECK(g2_zero(two, b, Mode::seed) == doctest::Approx(0.5));

  const FockBasis big = build_basis(8);
  for (double amp : {0.2, 0.5, 0.9}) {
    const DenseMat coh = testsup::coherent_seed_state(big, Cplx(amp, 0.1));
    CHECK(std::abs(g2_zero(coh, big, Mode::seed) - 1.0) <= 1e-6);
  }

  DenseMat vacuum = DenseMat::Zero(b.dim, b.dim);
  vacuum(0, 0) = 1.0;
  CHECK_THROWS_AS(g2_zero(vacuum, b, Mode::seed), std::domain_error);
}

TEST_CASE("lorentzian table at the standard parameters") {
  const FockBasis b = build_basis(4);
  SystemParams p;
  const double expected[] = {0.02, 0.01, 0.01};
  const double deltas[] = {0.0, 0.5, -0.5};
  for (int k = 0; k < 3; ++k) {
    SystemParams q = p;
    q.delta = deltas[k];
    const SteadySolution sol = steady_state(seed_idler_model(b, q), {1e-12});
    CHECK(std::abs(mean_occupation(sol.rho, b, Mode::seed) - expected[k]) <= 1e-8);
  }
}

TEST_CASE("trace distance basics") {
  DenseMat a = DenseMat::Zero(2, 2), c = DenseMat::Zero(2, 2);
  a(0, 0) = 1.0;
  c(1, 1) = 1.0;
  CHECK(trace_distance(a, a) == 0.0);
  CHECK(trace_distance(a, c) == doctest::Approx(1.0));
}

TEST_CASE("linear sweep: flat g2 and lorentzian occupation") {
  SystemParams p;  // g_eff = 0
  const auto grid = testsup::linspace(-3.0, 3.0, 21);
  const SweepResult sweep = detuning_sweep(p, grid, {}, {1e-12}, 2);
  REQUIRE(sweep.all_ok());
  for (const auto& pt : sweep.points) {
    CHECK(std::abs(pt.g2 - 1.0) <= 1e-6);
    CHECK(std::abs(pt.n_s - testsup::lorentzian_occupation(p.gamma, 0.1, pt.axis, p.gamma_s)) <=
          1e-8);
  }
}

TEST_CASE("g2 curves are even in detuning") {
  SystemParams p;
  p.g_eff = 0.4;
  const auto grid = testsup::linspace(-2.0, 2.0, 9);
  const SweepResult sweep = detuning_sweep(p, grid, {}, {1e-12}, 2);
  REQUIRE(sweep.all_ok());
  const int n = static_cast<int>(sweep.points.size());
  for (int k = 0; k < n / 2; ++k) {
    CHECK(std::abs(sweep.points[k].g2 - sweep.points[n - 1 - k].g2) <= 1e-8);
    CHECK(std::abs(sweep.points[k].n_s - sweep.points[n - 1 - k].n_s) <= 1e-8);
  }
}

TEST_CASE("sweep output is deterministic across thread counts") {
  SystemParams p;
  p.g_eff = 0.3;
  const auto grid = testsup::linspace(-1.0, 1.0, 11);
  const SweepResult s1 = detuning_sweep(p, grid, {}, {}, 1);
  const SweepResult s2 = detuning_sweep(p, grid, {}, {}, 2);
  std::ostringstream c1, c2;
  write_sweep_csv(c1, s1, {"run 1"});
  write_sweep_csv(c2, s2, {"run 1"});
  CHECK(c1.str() == c2.str());
  CHECK(c1.str().find("axis,n_s,n_i,g2,residual,n_max") != std::string::npos);
}

TEST_CASE("json embeds the parameter snapshot and config") {
  SystemParams p;
  const SweepResult sweep = detuning_sweep(p, {0.0, 1.0}, {}, {}, 1);
  const std::string json = sweep_to_json(sweep, {{"subcommand", "sweep"}});
  CHECK(json.find("\"gamma_s\": 1.0") != std::string::npos);
  CHECK(json.find("\"subcommand\": \"sweep\"") != std::string::npos);
}

TEST_CASE("auto truncation policy converges once at the worst case point") {
  SystemParams p;
  p.g_eff = 0.3;
  NmaxPolicy policy;
  policy.fixed = std::nullopt;
  policy.rel_tol = 1e-4;
  const SweepResult sweep = detuning_sweep(p, testsup::linspace(-1.0, 1.0, 5), policy, {}, 1);
  CHECK(sweep.all_ok());
  CHECK(sweep.n_max >= 1);
  for (const auto& pt : sweep.points) CHECK(pt.n_max == sweep.n_max);
}

TEST_CASE("local maxima counting with prominence") {
  CHECK(count_local_maxima({0.0, 1.0, 0.0}) == 1);
  CHECK(count_local_maxima({0.0, 1.0, 0.2, 0.8, 0.0}) == 2);
  CHECK(count_local_maxima({0.0, 1.0, 2.0, 3.0}) == 0);  // monotone
  // ripple below the prominence floor is not a peak
  CHECK(count_local_maxima({0.0, 1.0, 0.9999999, 1.0000001, 0.0}) == 1);
}

TEST_CASE("splitting scan: weak drive is a single lorentzian peak") {
  SystemParams p;
  p.g_eff = 0.4;
  NmaxPolicy policy;
  policy.fixed = 3;
  const auto curves =
      splitting_scan(p, {1e-3}, testsup::linspace(-3.0, 3.0, 41), policy, {1e-12}, 2);
  REQUIRE(curves.size() == 1);
  CHECK(curves[0].n_peaks == 1);
  // linear-response limit of the normalized curve
  for (std::size_t k = 0; k < curves[0].normalized.size(); ++k) {
    const double delta = curves[0].sweep.points[k].axis;
    const double expected = (p.gamma / p.gamma_s) / (delta * delta + 0.25);
    CHECK(std::abs(curves[0].normalized[k] - expected) <= 1e-5);
  }
}

TEST_CASE("threshold search: degenerate target and monotonicity") {
  SystemParams p;
  ThresholdOptions opts;
  opts.coarse_points = 11;
  opts.delta_tol = 1e-3;
  opts.g_tol = 5e-3;
  opts.nmax.fixed = 3;

  const ThresholdResult degenerate = blockade_threshold(p, 1.0, {0.0, 1.0}, opts);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.g_ratio == 0.0);

  const ThresholdResult t05 = blockade_threshold(p, 0.5, {0.05, 1.0}, opts);
  const ThresholdResult t04 = blockade_threshold(p, 0.4, {0.05, 1.0}, opts);
  CHECK(t04.g_ratio > t05.g_ratio);  // deeper antibunching needs more coupling

  CHECK_THROWS_AS(blockade_threshold(p, 0.5, {0.3, 0.32}, opts), std::invalid_argument);
}

TEST_CASE("failed points are explicit, not interpolated") {
  SystemParams p;
  p.f_s = 0.0;  // occupation identically zero: g2 undefined at every point
  const SweepResult sweep = detuning_sweep(p, {0.0, 0.5}, {}, {}, 1);
  CHECK_FALSE(sweep.all_ok());
  for (const auto& pt : sweep.points) {
    CHECK_FALSE(pt.ok);
    CHECK(std::isnan(pt.g2));
    CHECK_FALSE(pt.error.empty());
  }
  std::ostringstream csv;
  write_sweep_csv(csv, sweep);
  CHECK(csv.str().find("nan") != std::string::npos);
  const std::string json = sweep_to_json(sweep);
  CHECK(json.find("null") != std::string::npos);
}

TEST_CASE("grids must be strictly increasing") {
  SystemParams p;
  CHECK_THROWS_AS(detuning_sweep(p, {0.0, 0.0}, {}, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(detuning_sweep(p, {}, {}, {}, 1), std::invalid_argument);
}
