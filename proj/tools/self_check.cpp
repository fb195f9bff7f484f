#include "self_check.hpp"

#include <pmsim/comb.hpp>
#include <pmsim/materials.hpp>
#include <pmsim/sweeps.hpp>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace pmsim::cli {

namespace {

bool report(const char* name, bool ok, const std::string& detail) {
  std::printf("check %-28s %s  %s\n", name, ok ? "ok  " : "FAIL", detail.c_str());
  return ok;
}

}  // namespace

int run_self_check(unsigned seed, int threads) {
  int failures = 0;
  char buf[160];

  {  // driven linear resonator: lorentzian occupation, poissonian statistics
    SystemParams p;
    NmaxPolicy policy;
    policy.fixed = 3;
    std::vector<double> grid(21);
    for (int k = 0; k < 21; ++k) grid[k] = -3.0 + 6.0 * k / 20.0;
    const SweepResult sweep = detuning_sweep(p, grid, policy, {1e-12}, threads);
    double occ = 0.0, g2 = 0.0;
    for (const auto& pt : sweep.points) {
      const double lorentzian = p.gamma * 0.01 / (pt.axis * pt.axis + 0.25);
      occ = std::max(occ, std::abs(pt.n_s - lorentzian));
      g2 = std::max(g2, std::abs(pt.g2 - 1.0));
    }
    std::snprintf(buf, sizeof(buf), "occupation dev %.2e (<=1e-8), |g2-1| %.2e (<=1e-6)", occ, g2);
    if (!report("linear lorentzian limit", sweep.all_ok() && occ <= 1e-8 && g2 <= 1e-6, buf))
      ++failures;
  }

  {  // fock-state autocorrelations
    const FockBasis b = build_basis(2);
    DenseMat one = DenseMat::Zero(b.dim, b.dim), two = one;
    one(b.index(1, 0), b.index(1, 0)) = 1.0;
    two(b.index(2, 0), b.index(2, 0)) = 1.0;
    const double g2_one = g2_zero(one, b, Mode::seed);
    const double g2_two = g2_zero(two, b, Mode::seed);
    std::snprintf(buf, sizeof(buf), "g2(|1>) = %g (=0), g2(|2>) = %g (=0.5)", g2_one, g2_two);
    if (!report("fock statistics", g2_one == 0.0 && std::abs(g2_two - 0.5) < 1e-14, buf))
      ++failures;
  }

  {  // pump mode: linear-cavity fixed point
    PumpParams p;
    p.pump_detuning = 0.3;
    p.f_p = Cplx(0.4, -0.1);
    p.gamma_wg = 0.5;
    p.gamma_p = 1.0;
    const PumpSteadyState ss = pump_steady_state(p, 1e-10, {1e-12});
    const Cplx expected =
        std::sqrt(p.gamma_wg) * p.f_p / (Cplx(0.0, 1.0) * p.pump_detuning + 0.5 * p.gamma_p);
    const double dev = std::abs(ss.alpha - expected);
    std::snprintf(buf, sizeof(buf), "amplitude dev %.2e (<=1e-8)", dev);
    if (!report("pump linear fixed point", dev <= 1e-8, buf)) ++failures;
  }

  {  // gauge invariance of observables
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    const FockBasis b = build_basis(3);
    SystemParams p;
    p.g_eff = 0.4;
    const SteadySolution ref = steady_state(seed_idler_model(b, p), {1e-12});
    SystemParams rotated = p;
    rotated.gauge_phase = phase(rng);
    const SteadySolution rot = steady_state(seed_idler_model(b, rotated), {1e-12});
    const double dev =
        std::max(std::abs(mean_occupation(ref.rho, b, Mode::seed) -
                          mean_occupation(rot.rho, b, Mode::seed)),
                 std::abs(g2_zero(ref.rho, b, Mode::seed) - g2_zero(rot.rho, b, Mode::seed)));
    std::snprintf(buf, sizeof(buf), "phase %.3f, observable dev %.2e (<=1e-10)",
                  rotated.gauge_phase, dev);
    if (!report("gauge invariance", dev <= 1e-10, buf)) ++failures;
  }

  {  // comb triplets
    MoleculeSpec spec;
    const auto triplets = find_triplets(spec);
    double worst = 1.0;
    if (!triplets.empty()) {
      worst = 0.0;
      for (const auto& t : triplets) worst = std::max(worst, std::abs(t.mismatch()) / t.omega_s);
    }
    std::snprintf(buf, sizeof(buf), "%zu triplets, worst mismatch %.2e (<=1e-9)", triplets.size(),
                  worst);
    if (!report("comb triplet identity", !triplets.empty() && worst <= 1e-9, buf)) ++failures;
  }

  {  // materials scaling and inversion
    const PlatformFile file = bundled_platforms();
    double scaling = 0.0, round_trip = 0.0;
    for (const auto& p : file.platforms) {
      const double r01 = effective_coupling(p, 0.1).ratio;
      const double r1 = effective_coupling(p, 1.0).ratio;
      scaling = std::max(scaling, std::abs(r1 / r01 - std::sqrt(10.0)));
      const double back = effective_coupling(p, power_threshold(p, 0.325)).ratio;
      round_trip = std::max(round_trip, std::abs(back - 0.325));
    }
    std::snprintf(buf, sizeof(buf), "%zu platforms, sqrt(10) dev %.2e, round trip dev %.2e",
                  file.platforms.size(), scaling, round_trip);
    if (!report("materials estimator", file.platforms.size() == 6 && scaling <= 1e-12 &&
                                           round_trip <= 1e-12,
                buf))
      ++failures;
  }

  std::printf(failures == 0 ? "self-check passed\n" : "self-check FAILED (%d)\n", failures);
  return failures;
}

}  // namespace pmsim::cli
