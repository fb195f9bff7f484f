#include "pmsim/comb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace pmsim {

void MoleculeSpec::validate() const {
  if (!(n_eff > 1.0)) throw std::invalid_argument("MoleculeSpec: n_eff must be > 1");
  if (!(radius > 0.0)) throw std::invalid_argument("MoleculeSpec: radius must be > 0");
  if (!(coupling_j >= 0.0)) throw std::invalid_argument("MoleculeSpec: coupling must be >= 0");
  if (std::abs(radius_ratio - 0.5) > 1e-12) {
    throw std::invalid_argument("MoleculeSpec: only the commensurate radius ratio 1/2 is supported");
  }
  if (m_min < 1 || m_max < m_min) throw std::invalid_argument("MoleculeSpec: bad azimuthal range");
}

std::vector<Resonance> ring_resonances(double n_eff, double radius, int m_min, int m_max) {
  if (!(n_eff > 0.0) || !(radius > 0.0)) {
    throw std::invalid_argument("ring_resonances: n_eff and radius must be > 0");
  }
  if (m_min < 1 || m_max < m_min) throw std::invalid_argument("ring_resonances: bad m range");
  const double fsr = kSpeedOfLight / (n_eff * radius);
  std::vector<Resonance> out;
  out.reserve(m_max - m_min + 1);
  for (int m = m_min; m <= m_max; ++m) out.push_back({m, m * fsr});
  return out;
}

std::pair<double, double> hybridize(double omega_bar, double coupling_j) {
  if (!(coupling_j >= 0.0)) throw std::invalid_argument("hybridize: coupling must be >= 0");
  return {omega_bar - coupling_j, omega_bar + coupling_j};
}

std::vector<MoleculeLine> molecule_lines(const MoleculeSpec& spec) {
  spec.validate();
  const double fsr = kSpeedOfLight / (spec.n_eff * spec.radius);
  std::vector<MoleculeLine> out;
  for (int m = spec.m_min; m <= spec.m_max; ++m) {
    const double omega = m * fsr;
    if (m % 2 == 0) {
      const auto [lo, hi] = hybridize(omega, spec.coupling_j);
      out.push_back({m, '-', lo});
      out.push_back({m, '+', hi});
    } else {
      out.push_back({m, 's', omega});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MoleculeLine& a, const MoleculeLine& b) { return a.omega < b.omega; });
  return out;
}

std::vector<Triplet> find_triplets(const MoleculeSpec& spec) {
  spec.validate();
  const double fsr = kSpeedOfLight / (spec.n_eff * spec.radius);
  const double j = spec.coupling_j;

  std::vector<double> lines;
  for (const MoleculeLine& line : molecule_lines(spec)) lines.push_back(line.omega);

  std::vector<Triplet> out;
  for (int m = spec.m_min + 1; m + 1 <= spec.m_max; ++m) {
    if (m % 2 == 0) continue;  // seed must be an unhybridized (odd) line
    const double omega_s = m * fsr;
    const auto [p_lo, p_hi] = hybridize((m - 1) * fsr, j);
    const auto [i_lo, i_hi] = hybridize((m + 1) * fsr, j);

    for (const auto& [omega_p, omega_i, pb, ib] :
         {std::tuple{p_lo, i_hi, '-', '+'}, std::tuple{p_hi, i_lo, '+', '-'}}) {
      Triplet t;
      t.omega_p = omega_p;
      t.omega_s = omega_s;
      t.omega_i = omega_i;
      t.p_branch = pb;
      t.i_branch = ib;
      t.m_s = m;
      if (std::abs(t.mismatch()) > 1e-9 * omega_s) {
        throw SolverError("find_triplets: triplet condition violated beyond numerical precision");
      }
      double isolation = std::numeric_limits<double>::infinity();
      for (double member : {t.omega_p, t.omega_s, t.omega_i}) {
        for (double line : lines) {
          if (line == t.omega_p || line == t.omega_s || line == t.omega_i) continue;
          isolation = std::min(isolation, std::abs(line - member));
        }
      }
      t.isolation = std::isfinite(isolation) ? isolation : 0.0;
      t.isolated = j > 0.0 && t.isolation > 0.0;
      out.push_back(t);
    }
  }
  return out;  // empty when no odd line has doublet neighbours in range
}

}  // namespace pmsim
