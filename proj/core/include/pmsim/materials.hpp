#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmsim/common.hpp"

namespace pmsim {

// One microring platform record, SI units throughout. This is the only part
// of the code that works in SI; the quantum solver is dimensionless.
struct MaterialPlatform {
  std::string name;
  double n = 0.0;                  // linear refractive index
  double n2 = 0.0;                 // nonlinear index, m^2/W
  double q0 = 0.0;                 // intrinsic quality factor
  double radius = 0.0;             // ring radius, m
  double gamma_nl = 0.0;           // waveguide nonlinear parameter, (W m)^-1
  std::optional<double> a_eff;     // effective mode area, m^2
  std::optional<double> v_g;       // group velocity, m/s; defaults to c/n
  double omega_s = 2.0 * kPi * 193e12;  // working angular frequency, rad/s
  std::string source;

  double group_velocity() const { return v_g.value_or(kSpeedOfLight / n); }
  double linewidth() const { return omega_s / q0; }  // Gamma_s = omega_s / Q0

  // Positivity of every physical quantity; when both gamma_nl and (n2, a_eff)
  // are given they must agree through gamma_nl = omega_s n2 / (A_eff c)
  // within 5%.
  void validate() const;
};

// Non-ring records (e.g. photonic-crystal estimates) carry tabulated coupling
// ratios instead of ring parameters; they have no estimator code path.
struct TabulatedPlatform {
  std::string name;
  std::string geometry;
  std::map<double, double> ratio_by_power;  // P_p (W) -> g_eff / Gamma_s
  std::string source;
};

// gamma_nl = omega_s n2 / (A_eff c).
double nonlinear_parameter(double n2, double a_eff, double omega_s);

struct CouplingEstimate {
  double ratio = 0.0;          // g_eff / Gamma_s at the given pump power
  double g_over_gamma = 0.0;   // bare g_nl / Gamma_s
  double alpha_p = 0.0;        // pump amplitude |alpha_p| = sqrt(P/(hbar omega_s Gamma_s))
};

// ratio = gamma_nl v_g^2 / (2 pi R) * sqrt(hbar omega_s P_p / Gamma_s^3).
CouplingEstimate effective_coupling(const MaterialPlatform& platform, double pump_power_w);

// Inverse of effective_coupling: the pump power at which the coupling ratio
// reaches the target.
double power_threshold(const MaterialPlatform& platform, double target_ratio);

struct PlatformFile {
  std::vector<MaterialPlatform> platforms;
  std::vector<TabulatedPlatform> tabulated;
  std::vector<std::string> warnings;
};

// Parses the key-value platform record format (see data/platforms.dat for the
// schema). Schema violations report the record and field; an empty file
// yields an empty list with a warning.
PlatformFile load_platforms(const std::string& path);
PlatformFile parse_platforms(const std::string& text, std::vector<std::string>* warnings = nullptr);

// The data file compiled into the library.
const char* bundled_platforms_text();
PlatformFile bundled_platforms();

}  // namespace pmsim
