#include <doctest.h>

#include <pmsim/dynamics.hpp>

#include <algorithm>

#include "test_support.hpp"

using namespace pmsim;

TEST_CASE("exponential decay law for a single lossy mode") {
  LindbladModel model;
  model.hamiltonian = SpMat(2, 2);
  model.jump_ops.emplace_back(single_mode_annihilator(1), 1.0);
  DenseMat rho0 = DenseMat::Zero(2, 2);
  rho0(1, 1) = 1.0;

  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    EvolveOptions opts;
    opts.tol = 1e-9;
    const Trajectory traj = evolve(model, rho0, t, opts);
    CHECK(std::abs(traj.final_state(1, 1).real() - std::exp(-t)) <= 1e-6);
  }
}

TEST_CASE("zero generator leaves the state untouched") {
  LindbladModel model;
  model.hamiltonian = SpMat(4, 4);
  const DenseMat rho0 = testsup::random_density(4, 5);
  const Trajectory traj = evolve(model, rho0, 3.0);
  CHECK((traj.final_state - rho0).norm() == 0.0);
}

TEST_CASE("relaxation to the direct steady state") {
  const FockBasis b = build_basis(3);
  SystemParams p;
  p.delta = 0.2;
  p.g_eff = 0.4;
  const LindbladModel model = seed_idler_model(b, p);
  const SteadySolution direct = steady_state(model, {1e-12});

  DenseMat vacuum = DenseMat::Zero(b.dim, b.dim);
  vacuum(0, 0) = 1.0;
  EvolveOptions opts;
  opts.tol = 1e-9;
  const Trajectory traj = evolve(model, vacuum, 50.0, opts, &b);
  CHECK(trace_distance(traj.final_state, direct.rho) <= 1e-6);
  for (double drift : traj.trace_drift) CHECK(drift <= 10.0 * opts.tol);
}

TEST_CASE("adaptive result matches the fixed-step fallback") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.g_eff = 0.3;
  const LindbladModel model = seed_idler_model(b, p);
  DenseMat vacuum = DenseMat::Zero(b.dim, b.dim);
  vacuum(0, 0) = 1.0;

  EvolveOptions adaptive;
  adaptive.tol = 1e-10;
  const Trajectory t1 = evolve(model, vacuum, 5.0, adaptive);

  EvolveOptions fixed;
  fixed.fixed_dt = 1e-3;
  const Trajectory t2 = evolve(model, vacuum, 5.0, fixed);
  CHECK(trace_distance(t1.final_state, t2.final_state) <= 1e-8);
  CHECK(t2.steps == 5000);
}

TEST_CASE("protocol validation") {
  CHECK_THROWS_AS(DrivingProtocol::protocol_a(5.0, 5.0), std::invalid_argument);
  DrivingProtocol p;
  p.stages = {{0.0, true, false}};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);  // CW regime must have both on
  p.stages = {{1.0, true, true}};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);  // must start at 0
}

TEST_CASE("protocols A and B relax to the same state") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.delta = 0.1;
  p.g_eff = 0.45;
  EvolveOptions opts;
  opts.tol = 1e-10;
  const double t_final = 80.0;
  const DenseMat a =
      run_protocol(b, p, DrivingProtocol::protocol_a(3.0, 10.0), t_final, opts).final_state;
  const DenseMat bb =
      run_protocol(b, p, DrivingProtocol::protocol_b(3.0, 10.0), t_final, opts).final_state;
  CHECK(trace_distance(a, bb) <= 1e-6);

  // and both agree with the direct solve
  const SteadySolution direct = steady_state(seed_idler_model(b, p), {1e-12});
  CHECK(trace_distance(a, direct.rho) <= 1e-6);
}

TEST_CASE("single-segment protocol is plain evolution") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.g_eff = 0.25;
  DrivingProtocol single;
  single.stages = {{0.0, true, true}};
  EvolveOptions opts;
  opts.tol = 1e-9;
  const DenseMat via_protocol = run_protocol(b, p, single, 7.0, opts).final_state;

  DenseMat vacuum = DenseMat::Zero(b.dim, b.dim);
  vacuum(0, 0) = 1.0;
  const DenseMat via_evolve = evolve(seed_idler_model(b, p), vacuum, 7.0, opts).final_state;
  CHECK(trace_distance(via_protocol, via_evolve) <= 1e-12);
}

TEST_CASE("zero drive amplitudes leave the system in vacuum") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.f_s = 0.0;
  p.g_eff = 0.0;
  const DenseMat final_state =
      run_protocol(b, p, DrivingProtocol::protocol_a(1.0, 2.0), 20.0).final_state;
  DenseMat vacuum = DenseMat::Zero(b.dim, b.dim);
  vacuum(0, 0) = 1.0;
  CHECK(trace_distance(final_state, vacuum) <= 1e-10);
}

TEST_CASE("trajectory sampling records observables and drift") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.g_eff = 0.3;
  EvolveOptions opts;
  opts.tol = 1e-8;
  opts.samples = 7;
  const auto res = run_protocol(b, p, DrivingProtocol::protocol_a(2.0, 4.0), 12.0, opts);
  const Trajectory& traj = res.trajectory;
  REQUIRE(traj.times.size() == traj.n_s.size());
  REQUIRE(traj.times.size() == traj.trace_drift.size());
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == 12.0);
  CHECK(std::is_sorted(traj.times.begin(), traj.times.end()));
  CHECK(std::isnan(traj.g2.front()));  // vacuum start: g2 undefined
  for (double drift : traj.trace_drift) CHECK(drift <= 10.0 * opts.tol);
  CHECK(traj.n_s.back() > 0.0);
}

TEST_CASE("random initial states all relax to the unique steady state") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.delta = -0.3;
  p.g_eff = 0.5;
  const LindbladModel model = seed_idler_model(b, p);
  const SteadySolution direct = steady_state(model, {1e-12});
  EvolveOptions opts;
  opts.tol = 1e-9;
  for (unsigned seed = 0; seed < 3; ++seed) {
    const DenseMat rho0 = testsup::random_density(b.dim, 900 + seed);
    const Trajectory traj = evolve(model, rho0, 100.0, opts);
    CHECK(trace_distance(traj.final_state, direct.rho) <= 1e-5);
  }
}
