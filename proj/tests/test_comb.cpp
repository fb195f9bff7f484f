#include <doctest.h>

#include <pmsim/comb.hpp>

using namespace pmsim;

TEST_CASE("ring resonances are evenly spaced with the expected FSR") {
  const auto res = ring_resonances(2.0, 100e-6, 1, 10);
  REQUIRE(res.size() == 10);
  const double fsr = kSpeedOfLight / (2.0 * 100e-6);
  CHECK(fsr == doctest::Approx(1.49896229e12).epsilon(1e-9));
  for (std::size_t k = 1; k < res.size(); ++k) {
    CHECK(res[k].omega - res[k - 1].omega == doctest::Approx(fsr).epsilon(1e-12));
  }
  // halving the radius doubles the FSR
  const auto half = ring_resonances(2.0, 50e-6, 1, 2);
  CHECK(half[1].omega - half[0].omega == doctest::Approx(2.0 * fsr).epsilon(1e-12));
}

TEST_CASE("hybridization splits symmetrically") {
  const auto [lo, hi] = hybridize(5.0e14, 2.0e10);
  CHECK(0.5 * (lo + hi) == doctest::Approx(5.0e14));
  CHECK(hi - lo == doctest::Approx(4.0e10).epsilon(1e-12));
  const auto [dlo, dhi] = hybridize(5.0e14, 0.0);
  CHECK(dlo == dhi);
  // at omega_bar = 0 the splitting is exact in floating point
  const auto [zlo, zhi] = hybridize(0.0, 3.0);
  CHECK(zhi - zlo == 6.0);
}

TEST_CASE("triplets satisfy the four-wave-mixing identity") {
  MoleculeSpec spec;
  spec.n_eff = 2.1;
  spec.radius = 80e-6;
  spec.coupling_j = 1.0e10;
  spec.m_min = 100;
  spec.m_max = 110;
  const auto triplets = find_triplets(spec);
  REQUIRE_FALSE(triplets.empty());
  // odd seed lines with doublet neighbours: 101..109 -> 5 seeds, 2 branches
  CHECK(triplets.size() == 10);
  for (const auto& t : triplets) {
    CHECK(std::abs(t.mismatch()) <= 1e-9 * t.omega_s);
    CHECK(t.omega_p < t.omega_s);
    CHECK(t.omega_i > t.omega_s);
    CHECK(t.isolated);
    CHECK(t.isolation > 0.0);
  }
  // both branch assignments are emitted for each seed line
  int minus = 0, plus = 0;
  for (const auto& t : triplets) (t.p_branch == '-' ? minus : plus)++;
  CHECK(minus == 5);
  CHECK(plus == 5);
}

TEST_CASE("zero coupling degenerates to the bare comb, flagged non-isolated") {
  MoleculeSpec spec;
  spec.coupling_j = 0.0;
  spec.m_min = 10;
  spec.m_max = 14;
  const auto triplets = find_triplets(spec);
  REQUIRE_FALSE(triplets.empty());
  for (const auto& t : triplets) {
    CHECK_FALSE(t.isolated);
    CHECK(std::abs(t.mismatch()) <= 1e-9 * t.omega_s);
  }
}

TEST_CASE("no alignment in range yields an empty list") {
  MoleculeSpec spec;
  spec.m_min = 4;
  spec.m_max = 4;  // a single even line: no seed with doublet neighbours
  CHECK(find_triplets(spec).empty());
}

TEST_CASE("spec validation") {
  MoleculeSpec spec;
  spec.radius_ratio = 0.4;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec = MoleculeSpec{};
  spec.n_eff = 0.9;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(ring_resonances(2.0, 1e-4, 5, 4), std::invalid_argument);
}
