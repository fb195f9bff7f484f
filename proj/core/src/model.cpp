#include "pmsim/model.hpp"

#include <cmath>

namespace pmsim {

void SystemParams::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("SystemParams: gamma must be > 0");
  if (!(gamma_s >= gamma)) throw std::invalid_argument("SystemParams: gamma_s must be >= gamma");
  if (!(gamma_i > 0.0)) throw std::invalid_argument("SystemParams: gamma_i must be > 0");
  if (!(g_eff >= 0.0)) throw std::invalid_argument("SystemParams: g_eff must be >= 0");
  if (!std::isfinite(delta) || !std::isfinite(g_eff) || !std::isfinite(gauge_phase) ||
      !std::isfinite(f_s.real()) || !std::isfinite(f_s.imag())) {
    throw std::invalid_argument("SystemParams: non-finite parameter");
  }
}

void FullModelParams::validate() const {
  base.validate();
  if (!std::isfinite(g_ssss) || !std::isfinite(g_iiii) || !std::isfinite(g_sisi)) {
    throw std::invalid_argument("FullModelParams: non-finite SPM/XPM rate");
  }
  if (idler_detuning && !std::isfinite(*idler_detuning)) {
    throw std::invalid_argument("FullModelParams: non-finite idler detuning override");
  }
}

void PumpParams::validate() const {
  if (!(gamma_wg > 0.0)) throw std::invalid_argument("PumpParams: gamma_wg must be > 0");
  if (!(gamma_p >= gamma_wg)) throw std::invalid_argument("PumpParams: gamma_p must be >= gamma_wg");
  if (n_max_pump < 1) throw std::invalid_argument("PumpParams: n_max_pump must be >= 1");
  if (!std::isfinite(pump_detuning) || !std::isfinite(g_kerr) ||
      !std::isfinite(f_p.real()) || !std::isfinite(f_p.imag())) {
    throw std::invalid_argument("PumpParams: non-finite parameter");
  }
}

SpMat effective_hamiltonian(const FockBasis& basis, const SystemParams& p) {
  p.validate();
  const SpMat a_s = annihilator(basis, Mode::seed);
  const SpMat a_i = annihilator(basis, Mode::idler);
  const SpMat ad_s = a_s.adjoint();

  SpMat h = (p.delta * (number_operator(basis, Mode::seed) + 2.0 * number_operator(basis, Mode::idler))).eval();
  const double root_gamma = std::sqrt(p.gamma);
  h += (Cplx(0.0, 1.0) * root_gamma * (p.f_s * ad_s - std::conj(p.f_s) * a_s)).eval();
  const SpMat two_photon = (ad_s * ad_s * a_i).eval();  // a_s^+2 a_i
  const Cplx g = p.coupling();
  h += (g * two_photon + std::conj(g) * SpMat(two_photon.adjoint())).eval();
  h.prune(0.0, 0.0);
  h.makeCompressed();
  return h;
}

SpMat full_hamiltonian(const FockBasis& basis, const FullModelParams& p) {
  p.validate();
  const SpMat n_s = number_operator(basis, Mode::seed);
  const SpMat n_i = number_operator(basis, Mode::idler);

  SpMat h = effective_hamiltonian(basis, p.base);
  if (p.idler_detuning) {
    // Replace the resonant 2*delta idler term with the requested value.
    h += ((*p.idler_detuning - 2.0 * p.base.delta) * n_i).eval();
  }
  if (p.g_ssss != 0.0) {
    const SpMat a = annihilator(basis, Mode::seed);
    h += (p.g_ssss * SpMat(a.adjoint() * a.adjoint() * a * a)).eval();
  }
  if (p.g_iiii != 0.0) {
    const SpMat a = annihilator(basis, Mode::idler);
    h += (p.g_iiii * SpMat(a.adjoint() * a.adjoint() * a * a)).eval();
  }
  if (p.g_sisi != 0.0) h += (p.g_sisi * SpMat(n_s * n_i)).eval();
  h.prune(0.0, 0.0);
  h.makeCompressed();
  return h;
}

SpMat kerr_pump_hamiltonian(int n_max_pump, const PumpParams& p) {
  p.validate();
  if (n_max_pump < 1) throw std::invalid_argument("kerr_pump_hamiltonian: cutoff must be >= 1");
  const SpMat a = single_mode_annihilator(n_max_pump);
  const SpMat ad = a.adjoint();
  SpMat h = (p.pump_detuning * SpMat(ad * a)).eval();
  h += (p.g_kerr * SpMat(ad * ad * a * a)).eval();
  h += (Cplx(0.0, 1.0) * std::sqrt(p.gamma_wg) * (p.f_p * ad - std::conj(p.f_p) * a)).eval();
  h.prune(0.0, 0.0);
  h.makeCompressed();
  return h;
}

GaugeFix gauge_fix(Cplx g_complex) {
  return GaugeFix{std::abs(g_complex), std::arg(g_complex)};
}

}  // namespace pmsim
