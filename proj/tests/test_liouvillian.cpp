#include <doctest.h>

#include <pmsim/liouvillian.hpp>

#include "test_support.hpp"

using namespace pmsim;

TEST_CASE("pure decay of the one-photon projector") {
  LindbladModel model;
  model.hamiltonian = SpMat(2, 2);
  model.jump_ops.emplace_back(single_mode_annihilator(1), 1.0);

  DenseMat rho = DenseMat::Zero(2, 2);
  rho(1, 1) = 1.0;
  const DenseMat deriv = pmsim::apply(model, rho);
  DenseMat expected = DenseMat::Zero(2, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = -1.0;
  CHECK((deriv - expected).norm() == 0.0);
}

TEST_CASE("trace preservation over random hermitian states") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.delta = 0.3;
  p.g_eff = 0.4;
  const LindbladModel model = seed_idler_model(b, p);
  const SpMat lv = vectorize(model);

  double worst = 0.0;
  for (unsigned seed = 0; seed < 100; ++seed) {
    const DenseMat rho = testsup::random_hermitian(b.dim, seed);
    const DenseMat deriv = pmsim::apply(model, rho);
    worst = std::max(worst, std::abs(deriv.trace()));
    // and through the vectorized path
    Eigen::Map<const DenseVec> v(rho.data(), rho.size());
    const DenseVec dv = lv * v;
    Cplx tr = 0.0;
    for (int j = 0; j < b.dim; ++j) tr += dv(j * b.dim + j);
    worst = std::max(worst, std::abs(tr));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("matrix-free apply equals the dense element-wise superoperator") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.delta = -0.7;
  p.g_eff = 0.5;
  p.gauge_phase = 0.3;
  p.f_s = Cplx(0.2, 0.1);
  const LindbladModel model = seed_idler_model(b, p);
  const DenseMat lv_oracle = testsup::dense_liouvillian(model);
  const SpMat lv = vectorize(model);
  CHECK((DenseMat(lv) - lv_oracle).cwiseAbs().maxCoeff() <= 1e-13);

  for (unsigned seed = 0; seed < 5; ++seed) {
    const DenseMat rho = testsup::random_density(b.dim, 100 + seed);
    const DenseMat via_apply = pmsim::apply(model, rho);
    Eigen::Map<const DenseVec> v(rho.data(), rho.size());
    const DenseVec dv = lv_oracle * v;
    const Eigen::Map<const DenseMat> via_dense(dv.data(), b.dim, b.dim);
    CHECK((via_apply - via_dense).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("apply is linear") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.g_eff = 0.2;
  const LindbladModel model = seed_idler_model(b, p);
  const DenseMat r1 = testsup::random_hermitian(b.dim, 7);
  const DenseMat r2 = testsup::random_hermitian(b.dim, 8);
  const Cplx a(0.7, -0.4), c(-1.2, 0.3);
  const DenseMat lhs = pmsim::apply(model, (a * r1 + c * r2).eval());
  const DenseMat rhs = a * pmsim::apply(model, r1) + c * pmsim::apply(model, r2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("hermiticity preservation: L[rho]^+ = L[rho^+]") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.delta = 0.5;
  p.g_eff = 0.35;
  p.gauge_phase = 1.1;
  const LindbladModel model = seed_idler_model(b, p);
  for (unsigned seed = 0; seed < 5; ++seed) {
    DenseMat rho(b.dim, b.dim);  // deliberately non-hermitian
    std::mt19937 rng(300 + seed);
    std::normal_distribution<double> dist;
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) rho(i, j) = Cplx(dist(rng), dist(rng));
    const DenseMat lhs = pmsim::apply(model, rho).adjoint();
    const DenseMat rhs = pmsim::apply(model, rho.adjoint().eval());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("linear-cavity coherent state is the fixed point at zero coupling") {
  // alpha = sqrt(gamma) F / (i delta + gamma_s/2), idler in vacuum.
  const FockBasis b = build_basis(6);
  SystemParams p;
  p.delta = 0.7;
  p.f_s = Cplx(0.1, 0.0);
  p.g_eff = 0.0;
  const Cplx alpha =
      std::sqrt(p.gamma) * p.f_s / (Cplx(0.0, 1.0) * p.delta + 0.5 * p.gamma_s);
  const DenseMat rho = testsup::coherent_seed_state(b, alpha);
  const LindbladModel model = seed_idler_model(b, p);
  CHECK(pmsim::apply(model, rho).norm() <= 1e-10);
}

TEST_CASE("superoperator spectrum: zero mode exists, real parts non-positive") {
  const FockBasis b = build_basis(2);
  SystemParams p;
  p.delta = 0.2;
  p.g_eff = 0.4;
  const SpMat lv = vectorize(seed_idler_model(b, p));
  const DenseMat lv_dense = DenseMat(lv);
  Eigen::ComplexEigenSolver<DenseMat> es(lv_dense);
  double min_abs = 1e300, max_real = -1e300;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    min_abs = std::min(min_abs, std::abs(es.eigenvalues()(k)));
    max_real = std::max(max_real, es.eigenvalues()(k).real());
  }
  CHECK(min_abs <= 1e-10 * lv.norm());
  CHECK(max_real <= 1e-10);
}

TEST_CASE("dimension mismatch is rejected") {
  LindbladModel model;
  model.hamiltonian = SpMat(3, 3);
  model.jump_ops.emplace_back(single_mode_annihilator(1), 1.0);  // 2x2
  CHECK_THROWS_AS(vectorize(model), std::invalid_argument);
  CHECK_THROWS_AS(pmsim::apply(model, DenseMat::Zero(3, 3)), std::invalid_argument);

  LindbladModel bad_rate;
  bad_rate.hamiltonian = SpMat(2, 2);
  bad_rate.jump_ops.emplace_back(single_mode_annihilator(1), -1.0);
  CHECK_THROWS_AS(bad_rate.validate(), std::invalid_argument);
}
