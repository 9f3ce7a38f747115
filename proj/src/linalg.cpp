#include "adaschwarz/linalg.hpp"

#include <stdexcept>

#ifdef ADASCHWARZ_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#else
#include <Eigen/SparseCholesky>
#endif

namespace adaschwarz {

struct SparseCholesky::Impl {
#ifdef ADASCHWARZ_HAVE_CHOLMOD
  Eigen::CholmodSupernodalLLT<SparseMatrix, Eigen::Lower> solver;
#else
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower> solver;
#endif
};

SparseCholesky::SparseCholesky() = default;
SparseCholesky::SparseCholesky(SparseCholesky&&) noexcept = default;
SparseCholesky& SparseCholesky::operator=(SparseCholesky&&) noexcept = default;
SparseCholesky::~SparseCholesky() = default;

SparseCholesky::SparseCholesky(const SparseMatrix& A)
    : impl_(std::make_unique<Impl>()), rows_(A.rows()) {
  if (A.rows() != A.cols()) throw std::invalid_argument("SparseCholesky: matrix is not square");
  if (A.rows() == 0) return;
  impl_->solver.compute(A);
  if (impl_->solver.info() != Eigen::Success)
    throw std::runtime_error("SparseCholesky: factorization failed (matrix not SPD)");
#ifndef ADASCHWARZ_HAVE_CHOLMOD
  if ((impl_->solver.vectorD().array() <= 0.0).any())
    throw std::runtime_error("SparseCholesky: factorization failed (matrix not SPD)");
#endif
}

Eigen::VectorXd SparseCholesky::solve(const Eigen::VectorXd& b) const {
  if (b.size() != rows_) throw std::invalid_argument("SparseCholesky::solve: size mismatch");
  if (rows_ == 0) return b;
  return impl_->solver.solve(b);
}

Eigen::MatrixXd SparseCholesky::solve(const Eigen::MatrixXd& B) const {
  if (B.rows() != rows_) throw std::invalid_argument("SparseCholesky::solve: size mismatch");
  if (rows_ == 0 || B.cols() == 0) return B;
  return impl_->solver.solve(B);
}

}  // namespace adaschwarz
