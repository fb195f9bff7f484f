#include <doctest.h>

#include <pmsim/model.hpp>

#include <random>

#include "test_support.hpp"

using namespace pmsim;

namespace {

SystemParams params_with(double delta, double g_eff, Cplx f_s = Cplx(0.1, 0.0)) {
  SystemParams p;
  p.delta = delta;
  p.g_eff = g_eff;
  p.f_s = f_s;
  return p;
}

}  // namespace

TEST_CASE("number-only hamiltonian is the weighted excitation count") {
  const FockBasis b = build_basis(2);
  SystemParams p = params_with(1.0, 0.0, 0.0);
  const DenseMat h = DenseMat(effective_hamiltonian(b, p));
  for (int k = 0; k < b.dim; ++k) {
    const auto [n_s, n_i] = b.state(k);
    CHECK(h(k, k).real() == doctest::Approx(n_s + 2.0 * n_i));
  }
  CHECK((h - h.diagonal().asDiagonal().toDenseMatrix()).norm() == 0.0);
}

TEST_CASE("two-photon coupling element on the 2-photon sector") {
  const FockBasis b = build_basis(2);
  const double g = 0.37;
  const DenseMat h = DenseMat(effective_hamiltonian(b, params_with(0.0, g, 0.0)));
  CHECK(h(b.index(0, 1), b.index(2, 0)).real() == doctest::Approx(std::sqrt(2.0) * g));
  CHECK(h(b.index(2, 0), b.index(0, 1)).real() == doctest::Approx(std::sqrt(2.0) * g));
}

TEST_CASE("drive term carries i sqrt(gamma) F_s") {
  const FockBasis b = build_basis(1);
  SystemParams p = params_with(0.0, 0.0, Cplx(0.3, -0.2));
  const DenseMat h = DenseMat(effective_hamiltonian(b, p));
  const Cplx expected = Cplx(0.0, 1.0) * std::sqrt(p.gamma) * p.f_s;
  CHECK(std::abs(h(b.index(1, 0), b.index(0, 0)) - expected) < 1e-15);
}

TEST_CASE("hamiltonians are exactly hermitian for randomized parameters") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    SystemParams p;
    p.delta = dist(rng);
    p.f_s = Cplx(dist(rng), dist(rng));
    p.g_eff = std::abs(dist(rng));
    p.gauge_phase = dist(rng);
    const FockBasis b = build_basis(3);
    const DenseMat h = DenseMat(effective_hamiltonian(b, p));
    CHECK((h - h.adjoint().eval()).norm() == 0.0);
  }
}

TEST_CASE("undriven model conserves the generalized excitation number") {
  const FockBasis b = build_basis(3);
  SystemParams p = params_with(0.8, 0.45, 0.0);
  const SpMat h = effective_hamiltonian(b, p);
  const SpMat n_tot = (number_operator(b, Mode::seed) + 2.0 * number_operator(b, Mode::idler)).eval();
  const DenseMat comm = DenseMat(SpMat(h * n_tot)) - DenseMat(SpMat(n_tot * h));
  CHECK(comm.norm() == 0.0);
}

TEST_CASE("full model reduces to the effective model and adds exact shifts") {
  const FockBasis b = build_basis(2);
  FullModelParams fp;
  fp.base = params_with(0.4, 0.3);

  SUBCASE("all extras zero") {
    const DenseMat diff =
        DenseMat(full_hamiltonian(b, fp)) - DenseMat(effective_hamiltonian(b, fp.base));
    CHECK(diff.norm() == 0.0);
  }
  SUBCASE("seed self-phase modulation") {
    fp.g_ssss = 0.21;
    const DenseMat diff =
        DenseMat(full_hamiltonian(b, fp)) - DenseMat(effective_hamiltonian(b, fp.base));
    CHECK(diff(b.index(2, 0), b.index(2, 0)).real() == doctest::Approx(2.0 * 0.21));
    CHECK(diff(b.index(1, 0), b.index(1, 0)).real() == doctest::Approx(0.0));
  }
  SUBCASE("seed-idler cross-phase modulation") {
    fp.g_sisi = 0.13;
    const DenseMat diff =
        DenseMat(full_hamiltonian(b, fp)) - DenseMat(effective_hamiltonian(b, fp.base));
    CHECK(diff(b.index(1, 1), b.index(1, 1)).real() == doctest::Approx(0.13));
  }
  SUBCASE("idler detuning override replaces 2*delta") {
    fp.idler_detuning = 1.7;
    const DenseMat diff =
        DenseMat(full_hamiltonian(b, fp)) - DenseMat(effective_hamiltonian(b, fp.base));
    CHECK(diff(b.index(0, 1), b.index(0, 1)).real() == doctest::Approx(1.7 - 2.0 * 0.4));
  }
}

TEST_CASE("kerr pump hamiltonian") {
  PumpParams p;
  p.pump_detuning = 0.6;
  p.g_kerr = 0.25;
  p.f_p = Cplx(0.4, 0.1);
  p.gamma_wg = 0.5;
  p.gamma_p = 1.0;

  SUBCASE("no kerr, no drive: harmonic ladder") {
    PumpParams lin = p;
    lin.g_kerr = 0.0;
    lin.f_p = 0.0;
    const DenseMat h = DenseMat(kerr_pump_hamiltonian(4, lin));
    for (int n = 0; n <= 4; ++n) CHECK(h(n, n).real() == doctest::Approx(0.6 * n));
    CHECK((h - h.diagonal().asDiagonal().toDenseMatrix()).norm() == 0.0);
  }
  SUBCASE("kerr shift n(n-1) at n=2 and drive element") {
    const DenseMat h = DenseMat(kerr_pump_hamiltonian(4, p));
    CHECK(h(2, 2).real() == doctest::Approx(2.0 * 0.6 + 2.0 * 0.25));
    const Cplx expected = Cplx(0.0, 1.0) * std::sqrt(p.gamma_wg) * p.f_p;
    CHECK(std::abs(h(1, 0) - expected) < 1e-15);
    CHECK((h - h.adjoint().eval()).norm() == 0.0);
  }
}

TEST_CASE("gauge_fix is the polar decomposition") {
  const GaugeFix a = gauge_fix(Cplx(0.3, 0.0));
  CHECK(a.g_eff == doctest::Approx(0.3));
  CHECK(a.phase == doctest::Approx(0.0));

  const GaugeFix c = gauge_fix(0.3 * std::polar(1.0, kPi / 3.0));
  CHECK(c.g_eff == doctest::Approx(0.3));
  CHECK(c.phase == doctest::Approx(kPi / 3.0));
}

TEST_CASE("parameter validation") {
  SystemParams p;
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = SystemParams{};
  p.gamma_s = 0.2;  // below gamma
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = SystemParams{};
  p.g_eff = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  PumpParams pp;
  pp.n_max_pump = 0;
  CHECK_THROWS_AS(pp.validate(), std::invalid_argument);
}
