#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmsim/liouvillian.hpp"
#include "pmsim/steady.hpp"

namespace pmsim {

// Piecewise-constant drive schedule. Each stage holds from its start time to
// the next stage's start; the last stage holds to the end of the run and must
// have both drives on (the shared continuous-wave regime). With the pump mode
// eliminated, "pump on" means the effective coupling is at its target value.
struct DrivingProtocol {
  struct Stage {
    double start = 0.0;
    bool pump_on = false;
    bool seed_on = false;
  };
  std::vector<Stage> stages;
  std::string label = "custom";

  // Pump switched on at t_pump, seed added at t_seed (t_pump < t_seed).
  static DrivingProtocol protocol_a(double t_pump, double t_seed);
  // Seed switched on at t_seed, pump added at t_pump (t_seed < t_pump).
  static DrivingProtocol protocol_b(double t_seed, double t_pump);

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> n_s, n_i, g2;  // g2 is NaN below the occupation floor
  std::vector<double> trace_drift;   // |tr rho - 1| at each sample
  long steps = 0;
  long rejected = 0;
  DenseMat final_state;
};

struct EvolveOptions {
  double tol = 1e-8;                  // local error tolerance
  int samples = 0;                    // interior samples (endpoints always recorded)
  std::optional<double> fixed_dt;     // classic RK4 fallback for golden tests
  long max_steps = 50'000'000;
};

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration of
// d rho/dt = L[rho], matrix-free. Observables are sampled when a basis is
// supplied. Trace drift is reported, never silently renormalized; drift
// beyond 10*tol or a step-size underflow raises SolverError.
Trajectory evolve(const LindbladModel& model, const DenseMat& rho0, double t_final,
                  const EvolveOptions& opts = {}, const FockBasis* basis = nullptr);

struct ProtocolResult {
  DenseMat final_state;
  Trajectory trajectory;
};

// Integrates the protocol's piecewise-constant segments in sequence starting
// from vacuum. When the pump is off the effective coupling vanishes and the
// cross-phase-modulation shifts it imprints on the two retained resonances
// (xpm_s on the seed detuning, xpm_i on the idler term) are removed.
ProtocolResult run_protocol(const FockBasis& basis, const SystemParams& params,
                            const DrivingProtocol& protocol, double t_final,
                            const EvolveOptions& opts = {}, double xpm_s = 0.0,
                            double xpm_i = 0.0);

}  // namespace pmsim
