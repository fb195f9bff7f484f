#include "pmsim/fock.hpp"

#include <cmath>
#include <vector>

namespace pmsim {

FockBasis build_basis(int n_max, std::optional<int> seed_cutoff, int max_dim) {
  if (n_max < 0) throw std::invalid_argument("build_basis: n_max must be >= 0");
  const int sc = seed_cutoff.value_or(2 * n_max);
  if (sc < 0) throw std::invalid_argument("build_basis: seed_cutoff must be >= 0");
  const long long dim = static_cast<long long>(sc + 1) * (n_max + 1);
  if (dim > max_dim) {
    throw std::invalid_argument(
        "build_basis: dimension " + std::to_string(dim) + " exceeds the superoperator size limit (" +
        std::to_string(max_dim) + "); truncation is infeasible at this cutoff");
  }
  return FockBasis{n_max, sc, static_cast<int>(dim)};
}

SpMat annihilator(const FockBasis& basis, Mode mode) {
  std::vector<Eigen::Triplet<Cplx>> trips;
  trips.reserve(basis.dim);
  for (int n_i = 0; n_i <= basis.n_max; ++n_i) {
    for (int n_s = 0; n_s <= basis.seed_cutoff; ++n_s) {
      if (mode == Mode::seed && n_s >= 1) {
        trips.emplace_back(basis.index(n_s - 1, n_i), basis.index(n_s, n_i),
                           std::sqrt(static_cast<double>(n_s)));
      } else if (mode == Mode::idler && n_i >= 1) {
        trips.emplace_back(basis.index(n_s, n_i - 1), basis.index(n_s, n_i),
                           std::sqrt(static_cast<double>(n_i)));
      }
    }
  }
  SpMat a(basis.dim, basis.dim);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  return a;
}

SpMat number_operator(const FockBasis& basis, Mode mode) {
  std::vector<Eigen::Triplet<Cplx>> trips;
  trips.reserve(basis.dim);
  for (int n_i = 0; n_i <= basis.n_max; ++n_i) {
    for (int n_s = 0; n_s <= basis.seed_cutoff; ++n_s) {
      const int n = (mode == Mode::seed) ? n_s : n_i;
      if (n > 0) trips.emplace_back(basis.index(n_s, n_i), basis.index(n_s, n_i), static_cast<double>(n));
    }
  }
  SpMat nop(basis.dim, basis.dim);
  nop.setFromTriplets(trips.begin(), trips.end());
  nop.makeCompressed();
  return nop;
}

SpMat single_mode_annihilator(int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("single_mode_annihilator: cutoff must be >= 0");
  std::vector<Eigen::Triplet<Cplx>> trips;
  trips.reserve(cutoff);
  for (int n = 1; n <= cutoff; ++n) {
    trips.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  }
  SpMat a(cutoff + 1, cutoff + 1);
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  return a;
}

}  // namespace pmsim
