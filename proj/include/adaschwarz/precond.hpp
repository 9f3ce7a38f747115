#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "adaschwarz/assembly.hpp"
#include "adaschwarz/coarse.hpp"
#include "adaschwarz/decomp.hpp"
#include "adaschwarz/linalg.hpp"

namespace adaschwarz {

/**
 * Two-level additive Schwarz preconditioner
 *   z = R0 A0^{-1} R0^T r + sum_i R_i^T A_i^{-1} R_i r,
 * with exact local solves on the overlapping subdomains (zero Dirichlet data
 * on their boundaries) and an exact coarse solve. A null coarse space gives
 * the one-level method.
 */
class SchwarzPreconditioner {
 public:
  SchwarzPreconditioner(const AssembledSystem& system, const Decomposition& dec,
                        std::shared_ptr<const CoarseSpace> coarse);

  Eigen::VectorXd apply(const Eigen::VectorXd& r) const;

  int num_subdomains() const { return static_cast<int>(local_dofs_.size()); }
  int size() const { return size_; }
  const std::vector<int>& local_dofs(int i) const { return local_dofs_.at(i); }
  const CoarseSpace* coarse_space() const { return coarse_.get(); }
  const CoarseOperator* coarse_operator() const { return coarse_op_.get(); }

 private:
  int size_ = 0;
  std::vector<std::vector<int>> local_dofs_;
  std::vector<SparseCholesky> local_factor_;
  std::shared_ptr<const CoarseSpace> coarse_;
  std::unique_ptr<CoarseOperator> coarse_op_;
};

}  // namespace adaschwarz
