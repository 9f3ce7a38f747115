#pragma once

#include <memory>

#include <Eigen/Core>

#include "adaschwarz/assembly.hpp"

namespace adaschwarz {

/**
 * Exact sparse Cholesky factorization of an SPD matrix.
 *
 * Backed by CHOLMOD (supernodal) when available, Eigen's SimplicialLDLT
 * otherwise. Construction throws std::runtime_error if the matrix is not
 * numerically positive definite.
 */
class SparseCholesky {
 public:
  SparseCholesky();
  explicit SparseCholesky(const SparseMatrix& A);
  SparseCholesky(SparseCholesky&&) noexcept;
  SparseCholesky& operator=(SparseCholesky&&) noexcept;
  ~SparseCholesky();

  Eigen::Index rows() const { return rows_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& B) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  Eigen::Index rows_ = 0;
};

}  // namespace adaschwarz
