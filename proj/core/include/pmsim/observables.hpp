#pragma once

#include <functional>
#include <string>

#include "pmsim/common.hpp"
#include "pmsim/fock.hpp"

namespace pmsim {

// Occupations below this floor make g2(0) meaningless (division blowup).
inline constexpr double kOccupationFloor = 1e-14;

// Tr[n rho] for the selected mode. The imaginary residue must stay below
// 1e-8 (anything larger signals a corrupted state) and is discarded.
double mean_occupation(const DenseMat& rho, const FockBasis& basis, Mode mode);

// Equal-time second-order autocorrelation Tr[a+a+aa rho] / Tr[a+a rho]^2.
// Throws std::domain_error when the occupation is below kOccupationFloor.
double g2_zero(const DenseMat& rho, const FockBasis& basis, Mode mode);

// 1/2 * sum of |eigenvalues| of the hermitized difference.
double trace_distance(const DenseMat& a, const DenseMat& b);

// Labeled scalar functional of a state, used by truncation-convergence loops.
struct TrackedObservable {
  std::string label;
  std::function<double(const DenseMat&, const FockBasis&)> eval;
};

TrackedObservable tracked_occupation(Mode mode);
TrackedObservable tracked_g2(Mode mode);

}  // namespace pmsim
