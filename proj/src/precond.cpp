#include "adaschwarz/precond.hpp"

#include <stdexcept>
#include <string>

namespace adaschwarz {

SchwarzPreconditioner::SchwarzPreconditioner(const AssembledSystem& system,
                                             const Decomposition& dec,
                                             std::shared_ptr<const CoarseSpace> coarse)
    : size_(system.size()), coarse_(std::move(coarse)) {
  const int N = dec.num_subdomains();
  local_dofs_.resize(N);
  local_factor_.reserve(N);
  for (int i = 0; i < N; ++i) {
    auto& dofs = local_dofs_[i];
    for (int x : dec.overlap_nodes[i])
      if (system.dof_of_node[x] >= 0) dofs.push_back(system.dof_of_node[x]);
    if (dofs.empty())
      throw std::runtime_error("overlapping subdomain " + std::to_string(i) + " has no interior DOFs");
    try {
      local_factor_.emplace_back(extract_submatrix(system.A, dofs, dofs));
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("local matrix of subdomain " + std::to_string(i) +
                               " is singular: " + e.what());
    }
  }
  if (coarse_) coarse_op_ = std::make_unique<CoarseOperator>(assemble_coarse_operator(*coarse_, system, dec));
}

Eigen::VectorXd SchwarzPreconditioner::apply(const Eigen::VectorXd& r) const {
  if (r.size() != size_)
    throw std::invalid_argument("SchwarzPreconditioner::apply: residual has size " +
                                std::to_string(r.size()) + ", expected " + std::to_string(size_));
  Eigen::VectorXd z = Eigen::VectorXd::Zero(size_);
  if (coarse_op_) z = coarse_->columns * coarse_op_->factor.solve(coarse_->columns.transpose() * r);
  for (int i = 0; i < num_subdomains(); ++i) {
    const auto& dofs = local_dofs_[i];
    Eigen::VectorXd ri(static_cast<Eigen::Index>(dofs.size()));
    for (std::size_t k = 0; k < dofs.size(); ++k) ri[static_cast<Eigen::Index>(k)] = r[dofs[k]];
    const Eigen::VectorXd zi = local_factor_[i].solve(ri);
    for (std::size_t k = 0; k < dofs.size(); ++k) z[dofs[k]] += zi[static_cast<Eigen::Index>(k)];
  }
  return z;
}

}  // namespace adaschwarz
