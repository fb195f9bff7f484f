#pragma once

#include <string>
#include <vector>

#include "pmsim/liouvillian.hpp"
#include "pmsim/observables.hpp"

namespace pmsim {

struct StateValidity {
  double hermitian_defect = 0.0;  // max abs entry of rho - rho^+
  double trace_defect = 0.0;      // |tr rho - 1|
  double min_eigenvalue = 0.0;
};

StateValidity check_density(const DenseMat& rho);

struct SteadyOptions {
  double tol = 1e-10;          // accepted ||L[rho]||_F relative to ||L||_F
  int replaced_diagonal = 0;   // diagonal index whose row carries the trace constraint
  bool validate = true;        // enforce hermiticity/positivity on the result
};

struct SteadySolution {
  DenseMat rho;
  double residual = 0.0;  // ||L[rho]||_F after hermitization and normalization
  double scale = 0.0;     // ||L||_F
  int iterations = 0;     // Krylov iterations (0 for the direct fallback)
  std::string method;
};

// Unique fixed point of the Lindblad generator with unit trace. The equation
// for one diagonal element is replaced by the trace constraint (the generator
// is trace-preserving, so that row is redundant) and the resulting nonsingular
// sparse system is solved by ILUT-preconditioned BiCGSTAB, escalating to a
// stronger preconditioner and finally to a direct sparse LU before giving up.
SteadySolution steady_state(const LindbladModel& model, const SteadyOptions& opts = {});

struct ConvergenceStep {
  int n_max = 0;
  std::vector<double> values;
  std::vector<double> rel_change;  // empty for the first step
};

struct ConvergenceReport {
  std::vector<std::string> labels;
  std::vector<ConvergenceStep> steps;
  bool converged = false;
  int final_n_max = 0;
};

struct ConvergedSteady {
  SteadySolution solution;
  FockBasis basis;
  ConvergenceReport report;
};

// Grows the truncation until every tracked observable changes by less than
// rel_tol between successive n_max values, or n_max_limit is reached (then
// report.converged is false; no exception, the report is the status).
ConvergedSteady converge_truncation(const SystemParams& params,
                                    const std::vector<TrackedObservable>& observables,
                                    double rel_tol, int n_max_start, int n_max_limit,
                                    const SteadyOptions& opts = {});

struct PumpSteadyState {
  Cplx alpha;       // <a_p>
  double n_p = 0.0; // <n_p>
  int cutoff = 0;   // Fock cutoff at which the result stabilized
  double residual = 0.0;
};

// Steady state of the driven Kerr pump mode, solved at increasing cutoff
// (doubling from a coherent-tail estimate) until <a_p> and <n_p> stabilize.
// Feeds the effective coupling g_eff = g_nl |alpha| and the XPM shifts.
PumpSteadyState pump_steady_state(const PumpParams& params, double stab_tol = 1e-8,
                                  const SteadyOptions& opts = {});

}  // namespace pmsim
