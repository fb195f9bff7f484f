#include "pmsim/steady.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <cmath>
#include <sstream>

namespace pmsim {

namespace {

constexpr int kDirectFallbackLimit = 20000;  // max superoperator size for SparseLU

// Replace the row for diagonal element (j0, j0) with the trace constraint
// sum_j rho_jj = 1.
SpMat with_trace_row(const SpMat& lv, int dim, int j0) {
  const int replaced = j0 * dim + j0;
  std::vector<Eigen::Triplet<Cplx>> trips;
  trips.reserve(lv.nonZeros() + dim);
  for (int k = 0; k < lv.outerSize(); ++k) {
    for (SpMat::InnerIterator it(lv, k); it; ++it) {
      if (it.row() != replaced) trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (int j = 0; j < dim; ++j) trips.emplace_back(replaced, j * dim + j, Cplx(1.0, 0.0));
  SpMat out(lv.rows(), lv.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

struct LinearSolveOutcome {
  DenseVec x;
  double residual = 0.0;  // |A x - b|
  int iterations = 0;
  std::string method;
  bool ok = false;
};

LinearSolveOutcome solve_replaced_system(const SpMat& a, const DenseVec& b, double target) {
  LinearSolveOutcome out;
  {
    Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<Cplx>> solver;
    solver.preconditioner().setDroptol(5e-2);
    solver.preconditioner().setFillfactor(4);
    solver.setTolerance(target);
    solver.setMaxIterations(800);
    solver.compute(a);
    if (solver.info() == Eigen::Success) {
      DenseVec x = solver.solve(b);
      const double res = (a * x - b).norm();
      if (x.allFinite() && res <= 10.0 * target) {
        out = {std::move(x), res, static_cast<int>(solver.iterations()), "bicgstab+ilut", true};
        return out;
      }
    }
  }
  {
    Eigen::GMRES<SpMat, Eigen::IncompleteLUT<Cplx>> solver;
    solver.preconditioner().setDroptol(1e-3);
    solver.preconditioner().setFillfactor(10);
    solver.set_restart(100);
    solver.setTolerance(target);
    solver.setMaxIterations(4000);
    solver.compute(a);
    if (solver.info() == Eigen::Success) {
      DenseVec x = solver.solve(b);
      const double res = (a * x - b).norm();
      if (x.allFinite() && res <= 10.0 * target) {
        out = {std::move(x), res, static_cast<int>(solver.iterations()), "gmres+ilut", true};
        return out;
      }
    }
  }
  if (a.rows() <= kDirectFallbackLimit) {
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> solver;
    solver.analyzePattern(a);
    solver.factorize(a);
    if (solver.info() == Eigen::Success) {
      DenseVec x = solver.solve(b);
      const double res = (a * x - b).norm();
      if (x.allFinite()) {
        out = {std::move(x), res, 0, "sparselu", true};
        return out;
      }
    }
  }
  return out;
}

}  // namespace

StateValidity check_density(const DenseMat& rho) {
  StateValidity v;
  v.hermitian_defect = (rho - rho.adjoint().eval()).cwiseAbs().maxCoeff();
  v.trace_defect = std::abs(rho.trace() - Cplx(1.0, 0.0));
  const DenseMat herm = 0.5 * (rho + rho.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<DenseMat> es(herm, Eigen::EigenvaluesOnly);
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  return v;
}

SteadySolution steady_state(const LindbladModel& model, const SteadyOptions& opts) {
  model.validate();
  if (!(opts.tol > 0.0)) throw std::invalid_argument("steady_state: tol must be > 0");
  const int dim = model.dim();
  if (opts.replaced_diagonal < 0 || opts.replaced_diagonal >= dim) {
    throw std::invalid_argument("steady_state: replaced_diagonal out of range");
  }

  const SpMat lv = vectorize(model);
  const double scale = lv.norm();
  const double krylov_target = std::max(1e-14, opts.tol * 1e-3);

  // The vacuum diagonal carries the largest steady-state weight at weak
  // driving; its row is the default to swap for the trace constraint. One
  // alternative diagonal is retried before declaring the solve failed.
  std::vector<int> rows = {opts.replaced_diagonal};
  rows.push_back((opts.replaced_diagonal + dim / 2 + 1) % dim);

  std::string attempts;
  for (int j0 : rows) {
    const SpMat replaced = with_trace_row(lv, dim, j0);
    DenseVec b = DenseVec::Zero(replaced.rows());
    b(static_cast<Eigen::Index>(j0) * dim + j0) = 1.0;
    LinearSolveOutcome lin = solve_replaced_system(replaced, b, krylov_target);
    if (!lin.ok) {
      attempts += " [row " + std::to_string(j0) + ": linear solve failed]";
      continue;
    }

    DenseMat rho = Eigen::Map<DenseMat>(lin.x.data(), dim, dim);
    rho = (0.5 * (rho + rho.adjoint().eval())).eval();
    const Cplx tr = rho.trace();
    if (std::abs(tr) < 0.5) {
      attempts += " [row " + std::to_string(j0) + ": degenerate trace " + std::to_string(std::abs(tr)) + "]";
      continue;
    }
    rho /= tr;

    SteadySolution sol;
    sol.rho = std::move(rho);
    sol.residual = pmsim::apply(model, sol.rho).norm();
    sol.scale = scale;
    sol.iterations = lin.iterations;
    sol.method = lin.method;
    if (sol.residual > opts.tol * scale) {
      std::ostringstream msg;
      msg << "row " << j0 << ": residual " << sol.residual << " above " << opts.tol * scale;
      attempts += " [" + msg.str() + "]";
      continue;
    }

    if (opts.validate) {
      const StateValidity v = check_density(sol.rho);
      if (v.min_eigenvalue < -1e-8) {
        std::ostringstream msg;
        msg << "steady_state: non-positive result (min eigenvalue " << v.min_eigenvalue
            << " < -1e-8); truncation too small or pathological parameters";
        throw SolverError(msg.str());
      }
    }
    return sol;
  }
  throw SolverError("steady_state: ill-conditioned solve beyond retry;" + attempts);
}

ConvergedSteady converge_truncation(const SystemParams& params,
                                    const std::vector<TrackedObservable>& observables,
                                    double rel_tol, int n_max_start, int n_max_limit,
                                    const SteadyOptions& opts) {
  params.validate();
  if (!(rel_tol > 0.0)) throw std::invalid_argument("converge_truncation: rel_tol must be > 0");
  if (n_max_start < 1) throw std::invalid_argument("converge_truncation: n_max_start must be >= 1");
  if (n_max_limit < n_max_start) {
    throw std::invalid_argument("converge_truncation: n_max_limit must be >= n_max_start");
  }
  if (observables.empty()) throw std::invalid_argument("converge_truncation: no observables given");

  ConvergedSteady result;
  for (const auto& obs : observables) result.report.labels.push_back(obs.label);

  // Undriven systems decay to vacuum at any cutoff; nothing to scale.
  if (std::abs(params.f_s) == 0.0) {
    result.basis = build_basis(n_max_start);
    result.solution = steady_state(seed_idler_model(result.basis, params), opts);
    ConvergenceStep step;
    step.n_max = n_max_start;
    for (const auto& obs : observables) step.values.push_back(obs.eval(result.solution.rho, result.basis));
    result.report.steps.push_back(std::move(step));
    result.report.converged = true;
    result.report.final_n_max = n_max_start;
    return result;
  }

  std::vector<double> prev;
  for (int n = n_max_start; n <= n_max_limit; ++n) {
    const FockBasis basis = build_basis(n);
    SteadySolution sol = steady_state(seed_idler_model(basis, params), opts);

    ConvergenceStep step;
    step.n_max = n;
    for (const auto& obs : observables) step.values.push_back(obs.eval(sol.rho, basis));
    bool all_small = !prev.empty();
    if (!prev.empty()) {
      for (std::size_t k = 0; k < step.values.size(); ++k) {
        const double denom = std::max(std::abs(prev[k]), 1e-14);
        const double change = (std::abs(step.values[k]) < 1e-14 && std::abs(prev[k]) < 1e-14)
                                  ? 0.0
                                  : std::abs(step.values[k] - prev[k]) / denom;
        step.rel_change.push_back(change);
        if (change >= rel_tol) all_small = false;
      }
    }
    prev = step.values;
    result.report.steps.push_back(std::move(step));
    result.report.final_n_max = n;
    result.basis = basis;
    result.solution = std::move(sol);
    if (all_small) {
      result.report.converged = true;
      return result;
    }
  }
  result.report.converged = false;
  return result;
}

PumpSteadyState pump_steady_state(const PumpParams& params, double stab_tol,
                                  const SteadyOptions& opts) {
  params.validate();
  if (!(stab_tol > 0.0)) throw std::invalid_argument("pump_steady_state: stab_tol must be > 0");

  // Linear-cavity amplitude bounds the coherent-state tail; start the cutoff
  // schedule above it and double until the moments stop moving.
  const Cplx alpha_lin = std::sqrt(params.gamma_wg) * params.f_p /
                         (Cplx(0.0, 1.0) * params.pump_detuning + 0.5 * params.gamma_p);
  const double n_lin = std::norm(alpha_lin);
  int cutoff = std::max(8, static_cast<int>(std::ceil(4.0 * n_lin)) + 4);
  constexpr int kPumpCutoffLimit = 512;

  bool have_prev = false;
  Cplx prev_alpha = 0.0;
  double prev_np = 0.0;
  while (cutoff <= kPumpCutoffLimit) {
    PumpParams p = params;
    p.n_max_pump = cutoff;
    const LindbladModel model = pump_model(p);
    const SteadySolution sol = steady_state(model, opts);

    const SpMat a = single_mode_annihilator(cutoff);
    const Cplx alpha = (a * sol.rho).trace();
    double np = 0.0;
    for (int n = 0; n <= cutoff; ++n) np += n * sol.rho(n, n).real();

    if (have_prev) {
      const double da = std::abs(alpha - prev_alpha) / std::max(1.0, std::abs(alpha));
      const double dn = std::abs(np - prev_np) / std::max(1.0, std::abs(np));
      if (da <= stab_tol && dn <= stab_tol) {
        return PumpSteadyState{alpha, np, cutoff, sol.residual};
      }
    }
    have_prev = true;
    prev_alpha = alpha;
    prev_np = np;
    cutoff *= 2;
  }
  throw NonConvergence(
      "pump_steady_state: moments did not stabilize below cutoff 512; "
      "bistable or high-power regime");
}

}  // namespace pmsim
