#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <string>

namespace pmsim {

using Cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Cplx>;
using DenseMat = Eigen::MatrixXcd;
using DenseVec = Eigen::VectorXcd;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kHBar = 1.054571817e-34;      // J s
inline constexpr double kPi = 3.14159265358979323846;

// A linear system could not be solved to the requested accuracy, or the
// result violates the density-matrix invariants.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative refinement (truncation growth, cutoff doubling, bracketing)
// hit its limit without meeting the tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmsim
