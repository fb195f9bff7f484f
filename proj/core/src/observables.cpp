#include "pmsim/observables.hpp"

#include <cmath>

namespace pmsim {

namespace {

// Tr[f(n) rho] for a function of the selected mode's number operator; both
// moments needed here are diagonal in the Fock basis.
Cplx diagonal_moment(const DenseMat& rho, const FockBasis& basis, Mode mode,
                     const std::function<double(int)>& f) {
  if (rho.rows() != basis.dim || rho.cols() != basis.dim) {
    throw std::invalid_argument("observables: density matrix does not match basis");
  }
  Cplx acc = 0.0;
  for (int k = 0; k < basis.dim; ++k) {
    const auto [n_s, n_i] = basis.state(k);
    const int n = (mode == Mode::seed) ? n_s : n_i;
    acc += f(n) * rho(k, k);
  }
  return acc;
}

double real_checked(Cplx value, const char* what) {
  if (std::abs(value.imag()) > 1e-8) {
    throw SolverError(std::string(what) + ": imaginary residue " + std::to_string(value.imag()) +
                      " exceeds 1e-8; state is numerically corrupted");
  }
  return value.real();
}

}  // namespace

double mean_occupation(const DenseMat& rho, const FockBasis& basis, Mode mode) {
  const Cplx v = diagonal_moment(rho, basis, mode, [](int n) { return static_cast<double>(n); });
  return real_checked(v, "mean_occupation");
}

double g2_zero(const DenseMat& rho, const FockBasis& basis, Mode mode) {
  const double n_mean = mean_occupation(rho, basis, mode);
  if (n_mean < kOccupationFloor) {
    throw std::domain_error("g2_zero: occupation " + std::to_string(n_mean) +
                            " is below the floor 1e-14; g2(0) is undefined");
  }
  const Cplx num = diagonal_moment(rho, basis, mode,
                                   [](int n) { return static_cast<double>(n) * (n - 1); });
  return real_checked(num, "g2_zero") / (n_mean * n_mean);
}

double trace_distance(const DenseMat& a, const DenseMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  DenseMat diff = a - b;
  diff = (0.5 * (diff + diff.adjoint().eval())).eval();
  Eigen::SelfAdjointEigenSolver<DenseMat> es(diff, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

TrackedObservable tracked_occupation(Mode mode) {
  return TrackedObservable{
      mode == Mode::seed ? "n_s" : "n_i",
      [mode](const DenseMat& rho, const FockBasis& basis) {
        return mean_occupation(rho, basis, mode);
      }};
}

TrackedObservable tracked_g2(Mode mode) {
  return TrackedObservable{
      mode == Mode::seed ? "g2_s" : "g2_i",
      [mode](const DenseMat& rho, const FockBasis& basis) {
        return g2_zero(rho, basis, mode);
      }};
}

}  // namespace pmsim
