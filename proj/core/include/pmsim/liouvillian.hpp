#pragma once

#include <utility>
#include <vector>

#include "pmsim/common.hpp"
#include "pmsim/fock.hpp"
#include "pmsim/model.hpp"

namespace pmsim {

// Hamiltonian plus one-photon loss channels (two-photon losses neglected).
struct LindbladModel {
  SpMat hamiltonian;
  std::vector<std::pair<SpMat, double>> jump_ops;  // (operator, rate >= 0)

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
  void validate() const;
};

LindbladModel seed_idler_model(const FockBasis& basis, const SystemParams& p);
LindbladModel seed_idler_model(const FockBasis& basis, const FullModelParams& p);
LindbladModel pump_model(const PumpParams& p);

// Vectorized generator over column-stacked density matrices,
// vec(A rho B) = (B^T kron A) vec(rho):
//   L = -i (I kron H - H^T kron I)
//       + sum_k rate_k [ conj(A) kron A - 1/2 I kron (A^+A) - 1/2 (A^+A)^T kron I ].
SpMat vectorize(const LindbladModel& model);

// L[rho] evaluated matrix-free through sparse-dense products; agrees with
// vectorize(model) * vec(rho) to machine precision.
DenseMat apply(const LindbladModel& model, const DenseMat& rho);

// Cached form of apply() for time integration (jump products precomputed).
class LiouvillianAction {
 public:
  explicit LiouvillianAction(LindbladModel model);
  DenseMat operator()(const DenseMat& rho) const;
  const LindbladModel& model() const { return model_; }

 private:
  LindbladModel model_;
  std::vector<SpMat> adjoints_;   // A^+
  std::vector<SpMat> absorbers_;  // A^+ A
};

}  // namespace pmsim
