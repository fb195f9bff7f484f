#pragma once

#include <optional>
#include <utility>

#include "pmsim/common.hpp"

namespace pmsim {

enum class Mode { seed, idler };

// Truncated two-mode number basis. The idler is cut at n_max excitations and
// the seed at seed_cutoff (2*n_max unless overridden): the nonlinearity only
// populates an idler state with m photons from a seed state with 2m photons.
// Flat indices are row-major with the seed index varying fastest, so layouts
// and golden files are stable.
struct FockBasis {
  int n_max = 0;        // idler photon cutoff
  int seed_cutoff = 0;  // seed photon cutoff
  int dim = 1;          // (seed_cutoff+1)*(n_max+1)

  int index(int n_s, int n_i) const { return n_i * (seed_cutoff + 1) + n_s; }
  std::pair<int, int> state(int flat) const {
    return {flat % (seed_cutoff + 1), flat / (seed_cutoff + 1)};
  }
  bool contains(int n_s, int n_i) const {
    return n_s >= 0 && n_s <= seed_cutoff && n_i >= 0 && n_i <= n_max;
  }
};

// Largest basis dimension accepted by default; the vectorized Liouvillian
// has dim^2 unknowns, so this bounds the superoperator size.
inline constexpr int kDefaultMaxBasisDim = 4096;

FockBasis build_basis(int n_max, std::optional<int> seed_cutoff = std::nullopt,
                      int max_dim = kDefaultMaxBasisDim);

// a|n> = sqrt(n)|n-1> on the selected mode, identity on the other.
SpMat annihilator(const FockBasis& basis, Mode mode);

// Diagonal n_s or n_i.
SpMat number_operator(const FockBasis& basis, Mode mode);

// Single-mode ladder operator on {0..cutoff}; used by the pump Kerr model.
SpMat single_mode_annihilator(int cutoff);

}  // namespace pmsim
