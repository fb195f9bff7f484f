#pragma once

#include <vector>

#include "pmsim/common.hpp"

namespace pmsim {

// Two coupled rings, the smaller at half the radius of the larger, so every
// second resonance of the small ring lands on a large-ring resonance and
// hybridizes into a doublet split by 2J.
struct MoleculeSpec {
  double n_eff = 2.0;         // effective index (dispersion ignored)
  double radius = 100e-6;     // large-ring radius, m
  double radius_ratio = 0.5;  // small/large; only 1/2 is supported
  double coupling_j = 0.0;    // inter-ring coupling, rad/s
  int m_min = 1;              // azimuthal range of the large ring
  int m_max = 20;

  void validate() const;
};

struct Resonance {
  int m = 0;          // azimuthal number
  double omega = 0.0; // rad/s
};

// omega_m = m c / (n_eff R); the FSR c/(n_eff R) is constant.
std::vector<Resonance> ring_resonances(double n_eff, double radius, int m_min, int m_max);

// Doublet (omega_bar - J, omega_bar + J); the midpoint is preserved.
std::pair<double, double> hybridize(double omega_bar, double coupling_j);

struct MoleculeLine {
  int m = 0;           // azimuthal number on the large ring
  char branch = 's';   // 's' single line, '-'/'+' doublet members
  double omega = 0.0;  // rad/s
};

// Every resonance of the molecule in ascending frequency: odd-m lines stay
// single, even-m lines (aligned with the small ring) split into doublets.
std::vector<MoleculeLine> molecule_lines(const MoleculeSpec& spec);

struct Triplet {
  double omega_p = 0.0, omega_s = 0.0, omega_i = 0.0;  // rad/s
  char p_branch = '-';  // which member of the pump doublet: '-' or '+'
  char i_branch = '+';
  int m_s = 0;              // azimuthal number of the (unhybridized) seed line
  double isolation = 0.0;   // distance to the nearest non-triplet resonance, rad/s
  bool isolated = false;    // false when J = 0 (bare comb, everything equally spaced)

  double mismatch() const { return omega_p + omega_i - 2.0 * omega_s; }
};

// Locates the equally spaced triplets around every unhybridized large-ring
// line whose two neighbours are alignment doublets. Both branch assignments
// (omega_p^-, omega_i^+) and (omega_p^+, omega_i^-) satisfy
// omega_p + omega_i = 2 omega_s and both are emitted.
std::vector<Triplet> find_triplets(const MoleculeSpec& spec);

}  // namespace pmsim
