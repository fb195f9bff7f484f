#pragma once

#include <optional>

#include "pmsim/common.hpp"
#include "pmsim/fock.hpp"

namespace pmsim {

// Rates for the two-mode effective model, all in units of a reference
// linewidth (the seed linewidth in every shipped default, so gamma_s = 1).
// Defaults reproduce the standard sweep configuration: Gamma_i = Gamma_s,
// gamma/Gamma_s = 0.5, F_s/sqrt(Gamma_s) = 0.1.
struct SystemParams {
  double delta = 0.0;        // seed-drive detuning (resonance minus source)
  Cplx f_s = Cplx(0.1, 0.0); // seed drive amplitude, units rate^(1/2)
  double gamma = 0.5;        // waveguide coupling rate
  double gamma_s = 1.0;      // total seed linewidth
  double gamma_i = 1.0;      // total idler linewidth
  double g_eff = 0.0;        // effective two-photon coupling magnitude
  double gauge_phase = 0.0;  // phase of the complex coupling, radians

  Cplx coupling() const { return g_eff * std::polar(1.0, gauge_phase); }
  void validate() const;
};

// Extends SystemParams with self- and cross-phase modulation between the two
// retained modes, plus an absolute override for the idler detuning term
// (which is 2*delta when the triplet is exactly resonant).
struct FullModelParams {
  SystemParams base;
  double g_ssss = 0.0;  // seed self-phase modulation
  double g_iiii = 0.0;  // idler self-phase modulation
  double g_sisi = 0.0;  // seed-idler cross-phase modulation
  std::optional<double> idler_detuning;

  void validate() const;
};

// Single-mode driven Kerr resonator (the strongly pumped mode).
struct PumpParams {
  double pump_detuning = 0.0;  // loaded pump resonance minus its drive
  Cplx f_p = Cplx(0.0, 0.0);   // pump drive amplitude, units rate^(1/2)
  double gamma_wg = 0.5;       // waveguide coupling rate
  double gamma_p = 1.0;        // total pump linewidth
  double g_kerr = 0.0;         // self-Kerr rate
  int n_max_pump = 8;          // Fock cutoff for the pump mode

  void validate() const;
};

// H = delta*(n_s + 2 n_i) + i sqrt(gamma) (F_s a_s^+ - F_s^* a_s)
//     + g (a_s^+2 a_i + h.c.), hbar = 1.
SpMat effective_hamiltonian(const FockBasis& basis, const SystemParams& p);

// effective_hamiltonian plus SPM/XPM corrections and the idler detuning
// override; reduces to the effective model when the extras vanish.
SpMat full_hamiltonian(const FockBasis& basis, const FullModelParams& p);

// Single-mode H = detuning*n_p + g_kerr a^+2 a^2 + i sqrt(gamma)(F_p a^+ - F_p^* a)
// on the {0..n_max_pump} ladder.
SpMat kerr_pump_hamiltonian(int n_max_pump, const PumpParams& p);

struct GaugeFix {
  double g_eff;   // modulus, >= 0
  double phase;   // radians
};

// Polar decomposition of a complex coupling. The phase can always be rotated
// away by redefining the idler operator, so observables must not depend on it.
GaugeFix gauge_fix(Cplx g_complex);

}  // namespace pmsim
