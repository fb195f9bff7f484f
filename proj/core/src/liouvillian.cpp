#include "pmsim/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace pmsim {

void LindbladModel::validate() const {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw std::invalid_argument("LindbladModel: hamiltonian must be square");
  }
  for (const auto& [op, rate] : jump_ops) {
    if (op.rows() != hamiltonian.rows() || op.cols() != hamiltonian.cols()) {
      throw std::invalid_argument("LindbladModel: jump operator dimension mismatch");
    }
    if (!(rate >= 0.0)) throw std::invalid_argument("LindbladModel: jump rate must be >= 0");
  }
}

LindbladModel seed_idler_model(const FockBasis& basis, const SystemParams& p) {
  LindbladModel model;
  model.hamiltonian = effective_hamiltonian(basis, p);
  model.jump_ops.emplace_back(annihilator(basis, Mode::seed), p.gamma_s);
  model.jump_ops.emplace_back(annihilator(basis, Mode::idler), p.gamma_i);
  return model;
}

LindbladModel seed_idler_model(const FockBasis& basis, const FullModelParams& p) {
  LindbladModel model;
  model.hamiltonian = full_hamiltonian(basis, p);
  model.jump_ops.emplace_back(annihilator(basis, Mode::seed), p.base.gamma_s);
  model.jump_ops.emplace_back(annihilator(basis, Mode::idler), p.base.gamma_i);
  return model;
}

LindbladModel pump_model(const PumpParams& p) {
  LindbladModel model;
  model.hamiltonian = kerr_pump_hamiltonian(p.n_max_pump, p);
  model.jump_ops.emplace_back(single_mode_annihilator(p.n_max_pump), p.gamma_p);
  return model;
}

SpMat vectorize(const LindbladModel& model) {
  model.validate();
  const int dim = model.dim();
  SpMat eye(dim, dim);
  eye.setIdentity();

  const SpMat& h = model.hamiltonian;
  SpMat lv = (Cplx(0.0, -1.0) *
              (Eigen::kroneckerProduct(eye, h).eval() -
               Eigen::kroneckerProduct(SpMat(h.transpose()), eye).eval())).eval();
  for (const auto& [a, rate] : model.jump_ops) {
    if (rate == 0.0) continue;
    const SpMat ada = (SpMat(a.adjoint()) * a).eval();
    lv += (rate * (Eigen::kroneckerProduct(SpMat(a.conjugate()), a).eval() -
                   0.5 * Eigen::kroneckerProduct(eye, ada).eval() -
                   0.5 * Eigen::kroneckerProduct(SpMat(ada.transpose()), eye).eval())).eval();
  }
  lv.prune(0.0, 0.0);
  lv.makeCompressed();
  return lv;
}

DenseMat apply(const LindbladModel& model, const DenseMat& rho) {
  model.validate();
  if (rho.rows() != model.dim() || rho.cols() != model.dim()) {
    throw std::invalid_argument("apply: density matrix dimension mismatch");
  }
  const SpMat& h = model.hamiltonian;
  DenseMat out = Cplx(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& [a, rate] : model.jump_ops) {
    if (rate == 0.0) continue;
    const SpMat ad = a.adjoint();
    const SpMat ada = (ad * a).eval();
    const DenseMat a_rho = a * rho;
    out += rate * (a_rho * ad - 0.5 * (ada * rho) - 0.5 * (rho * ada));
  }
  return out;
}

LiouvillianAction::LiouvillianAction(LindbladModel model) : model_(std::move(model)) {
  model_.validate();
  adjoints_.reserve(model_.jump_ops.size());
  absorbers_.reserve(model_.jump_ops.size());
  for (const auto& [a, rate] : model_.jump_ops) {
    adjoints_.push_back(SpMat(a.adjoint()));
    absorbers_.push_back((adjoints_.back() * a).eval());
  }
}

DenseMat LiouvillianAction::operator()(const DenseMat& rho) const {
  const SpMat& h = model_.hamiltonian;
  DenseMat out = Cplx(0.0, -1.0) * (h * rho - rho * h);
  for (std::size_t k = 0; k < model_.jump_ops.size(); ++k) {
    const double rate = model_.jump_ops[k].second;
    if (rate == 0.0) continue;
    const SpMat& a = model_.jump_ops[k].first;
    const DenseMat a_rho = a * rho;
    out += rate * (a_rho * adjoints_[k] - 0.5 * (absorbers_[k] * rho) - 0.5 * (rho * absorbers_[k]));
  }
  return out;
}

}  // namespace pmsim
