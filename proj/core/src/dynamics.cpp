#include "pmsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pmsim {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

double error_norm(const DenseMat& err, const DenseMat& y0, const DenseMat& y1, double atol,
                  double rtol) {
  double acc = 0.0;
  const auto n = err.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double sc =
        atol + rtol * std::max(std::abs(y0.data()[k]), std::abs(y1.data()[k]));
    const double e = std::abs(err.data()[k]) / sc;
    acc += e * e;
  }
  return std::sqrt(acc / static_cast<double>(n));
}

struct Sampler {
  Trajectory* traj;
  const FockBasis* basis;
  double tol;

  void record(double t, const DenseMat& rho) {
    traj->times.push_back(t);
    const double drift = std::abs(rho.trace() - Cplx(1.0, 0.0));
    traj->trace_drift.push_back(drift);
    if (basis != nullptr) {
      const double ns = mean_occupation(rho, *basis, Mode::seed);
      const double ni = mean_occupation(rho, *basis, Mode::idler);
      traj->n_s.push_back(ns);
      traj->n_i.push_back(ni);
      traj->g2.push_back(ns < kOccupationFloor
                             ? std::numeric_limits<double>::quiet_NaN()
                             : g2_zero(rho, *basis, Mode::seed));
    }
  }
};

void check_drift(double t, const DenseMat& rho, double tol) {
  const double drift = std::abs(rho.trace() - Cplx(1.0, 0.0));
  if (drift > 10.0 * tol) {
    std::ostringstream msg;
    msg << "evolve: trace drift " << drift << " exceeds 10*tol at t=" << t;
    throw SolverError(msg.str());
  }
}

// Integrates from t0 to t1 in place, recording interior samples at the given
// times (assumed sorted, within (t0, t1)).
void integrate_segment(const LiouvillianAction& action, DenseMat& rho, double t0, double t1,
                       const EvolveOptions& opts, Trajectory& traj, Sampler* sampler,
                       const std::vector<double>& sample_times) {
  if (t1 <= t0) return;
  const double atol = 1e-2 * opts.tol;
  const double rtol = opts.tol;

  if (opts.fixed_dt) {
    const double dt = *opts.fixed_dt;
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: fixed_dt must be > 0");
    double t = t0;
    std::size_t next_sample = 0;
    while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
      double h = std::min(dt, t1 - t);
      if (next_sample < sample_times.size() && sample_times[next_sample] <= t + h) {
        h = sample_times[next_sample] - t;
      }
      const DenseMat k1 = action(rho);
      const DenseMat k2 = action((rho + 0.5 * h * k1).eval());
      const DenseMat k3 = action((rho + 0.5 * h * k2).eval());
      const DenseMat k4 = action((rho + h * k3).eval());
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += h;
      ++traj.steps;
      if (next_sample < sample_times.size() &&
          std::abs(t - sample_times[next_sample]) <= 1e-12 * std::max(1.0, std::abs(t))) {
        if (sampler) sampler->record(t, rho);
        ++next_sample;
      }
    }
    check_drift(t1, rho, opts.tol);
    return;
  }

  double t = t0;
  DenseMat k1 = action(rho);
  const double f0 = k1.norm();
  double h = std::min(t1 - t0, f0 > 0.0 ? 0.01 * std::max(rho.norm(), 1e-3) / f0 : 0.1);
  std::size_t next_sample = 0;
  bool fsal_valid = true;

  while (t < t1 - 1e-15 * std::max(1.0, std::abs(t1))) {
    double h_step = std::min(h, t1 - t);
    bool clipped = h_step < h;
    if (next_sample < sample_times.size() && sample_times[next_sample] < t + h_step) {
      h_step = sample_times[next_sample] - t;
      clipped = true;
    }
    if (!fsal_valid) {
      k1 = action(rho);
      fsal_valid = true;
    }
    const DenseMat k2 = action((rho + h_step * (kA21 * k1)).eval());
    const DenseMat k3 = action((rho + h_step * (kA31 * k1 + kA32 * k2)).eval());
    const DenseMat k4 = action((rho + h_step * (kA41 * k1 + kA42 * k2 + kA43 * k3)).eval());
    const DenseMat k5 =
        action((rho + h_step * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4)).eval());
    const DenseMat k6 = action(
        (rho + h_step * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5)).eval());
    const DenseMat y1 =
        rho + h_step * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const DenseMat k7 = action(y1);
    const DenseMat err =
        h_step * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    const double enorm = error_norm(err, rho, y1, atol, rtol);

    if (enorm <= 1.0) {
      t += h_step;
      rho = y1;
      k1 = k7;  // first-same-as-last
      ++traj.steps;
      check_drift(t, rho, opts.tol);
      if (next_sample < sample_times.size() &&
          std::abs(t - sample_times[next_sample]) <= 1e-12 * std::max(1.0, std::abs(t))) {
        if (sampler) sampler->record(t, rho);
        ++next_sample;
      }
    } else {
      ++traj.rejected;
      fsal_valid = false;
    }
    const double factor =
        enorm > 0.0 ? std::clamp(0.9 * std::pow(enorm, -0.2), 0.2, 5.0) : 5.0;
    const double h_next = (clipped && enorm <= 1.0) ? std::max(h, h_step * factor)
                                                    : h_step * factor;
    h = h_next;
    if (traj.steps + traj.rejected > opts.max_steps) {
      throw SolverError("evolve: step budget exhausted");
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t1))) {
      std::ostringstream msg;
      msg << "evolve: step-size underflow (h=" << h << ") at t=" << t
          << " after " << traj.steps << " steps, " << traj.rejected
          << " rejected; the generator is too stiff for the requested tolerance";
      throw SolverError(msg.str());
    }
  }
}

}  // namespace

DrivingProtocol DrivingProtocol::protocol_a(double t_pump, double t_seed) {
  DrivingProtocol p;
  p.label = "A";
  p.stages = {{0.0, false, false}, {t_pump, true, false}, {t_seed, true, true}};
  p.validate();
  return p;
}

DrivingProtocol DrivingProtocol::protocol_b(double t_seed, double t_pump) {
  DrivingProtocol p;
  p.label = "B";
  p.stages = {{0.0, false, false}, {t_seed, false, true}, {t_pump, true, true}};
  p.validate();
  return p;
}

void DrivingProtocol::validate() const {
  if (stages.empty()) throw std::invalid_argument("DrivingProtocol: empty schedule");
  if (stages.front().start != 0.0) {
    throw std::invalid_argument("DrivingProtocol: first stage must start at t=0");
  }
  for (std::size_t k = 1; k < stages.size(); ++k) {
    if (!(stages[k].start > stages[k - 1].start)) {
      throw std::invalid_argument("DrivingProtocol: switch times must be strictly increasing");
    }
  }
  if (!stages.back().pump_on || !stages.back().seed_on) {
    throw std::invalid_argument(
        "DrivingProtocol: both drives must be on beyond the last switch");
  }
}

Trajectory evolve(const LindbladModel& model, const DenseMat& rho0, double t_final,
                  const EvolveOptions& opts, const FockBasis* basis) {
  model.validate();
  if (!(t_final > 0.0)) throw std::invalid_argument("evolve: t_final must be > 0");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("evolve: tol must be > 0");
  if (rho0.rows() != model.dim() || rho0.cols() != model.dim()) {
    throw std::invalid_argument("evolve: initial state dimension mismatch");
  }

  Trajectory traj;
  Sampler sampler{&traj, basis, opts.tol};
  DenseMat rho = rho0;
  sampler.record(0.0, rho);

  std::vector<double> sample_times;
  for (int k = 1; k <= opts.samples; ++k) {
    sample_times.push_back(t_final * k / (opts.samples + 1));
  }

  const LiouvillianAction action(model);
  integrate_segment(action, rho, 0.0, t_final, opts, traj, &sampler, sample_times);

  sampler.record(t_final, rho);
  traj.final_state = std::move(rho);
  return traj;
}

ProtocolResult run_protocol(const FockBasis& basis, const SystemParams& params,
                            const DrivingProtocol& protocol, double t_final,
                            const EvolveOptions& opts, double xpm_s, double xpm_i) {
  params.validate();
  protocol.validate();
  if (!(protocol.stages.back().start < t_final)) {
    throw std::invalid_argument("run_protocol: t_final must lie beyond the last switch");
  }

  ProtocolResult result;
  Sampler sampler{&result.trajectory, &basis, opts.tol};
  DenseMat rho = DenseMat::Zero(basis.dim, basis.dim);
  rho(0, 0) = 1.0;  // vacuum
  sampler.record(0.0, rho);

  for (std::size_t k = 0; k < protocol.stages.size(); ++k) {
    const auto& stage = protocol.stages[k];
    const double t0 = stage.start;
    const double t1 = (k + 1 < protocol.stages.size()) ? protocol.stages[k + 1].start : t_final;

    FullModelParams stage_params;
    stage_params.base = params;
    if (!stage.seed_on) stage_params.base.f_s = 0.0;
    if (!stage.pump_on) {
      stage_params.base.g_eff = 0.0;
      stage_params.base.delta = params.delta - xpm_s;
      stage_params.idler_detuning = 2.0 * params.delta - xpm_i;
    }
    const LiouvillianAction action(seed_idler_model(basis, stage_params));

    std::vector<double> sample_times;
    const int seg_samples =
        opts.samples > 0
            ? std::max(1, static_cast<int>(opts.samples * (t1 - t0) / t_final))
            : 0;
    for (int s = 1; s <= seg_samples; ++s) {
      sample_times.push_back(t0 + (t1 - t0) * s / (seg_samples + 1));
    }
    integrate_segment(action, rho, t0, t1, opts, result.trajectory, &sampler, sample_times);
    sampler.record(t1, rho);
  }
  result.final_state = std::move(rho);
  return result;
}

}  // namespace pmsim
