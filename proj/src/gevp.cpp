#include "adaschwarz/gevp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace adaschwarz {

Eigensystem solve_gevp(const Eigen::MatrixXd& A, const Eigen::VectorXd& B_diag,
                       const Eigen::MatrixXd& kernel) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B_diag.size() != n)
    throw std::invalid_argument("solve_gevp: dimension mismatch");
  if ((B_diag.array() <= 0.0).any())
    throw std::invalid_argument("solve_gevp: B must have a strictly positive diagonal");
  const double anorm = A.cwiseAbs().maxCoeff();
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(anorm, 1e-300))
    throw std::invalid_argument("solve_gevp: A is not symmetric");

  Eigensystem es;
  if (n == 0) return es;

  const Eigen::VectorXd d = B_diag.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd C = d.asDiagonal() * A * d.asDiagonal();
  C = 0.5 * (C + C.transpose());

  Eigen::VectorXd values;
  Eigen::MatrixXd Y;
  const Eigen::Index k = kernel.size() == 0 ? 0 : kernel.cols();
  if (k > 0) {
    if (kernel.rows() != n) throw std::invalid_argument("solve_gevp: kernel has wrong row count");
    if ((A * kernel).cwiseAbs().maxCoeff() > 1e-10 * std::max(anorm, 1e-300) * kernel.cwiseAbs().maxCoeff() * n)
      throw std::invalid_argument("solve_gevp: supplied kernel is not annihilated by A");
    // orthonormal basis of B^{1/2} ker(A) and of its complement
    const Eigen::MatrixXd Kt = B_diag.cwiseSqrt().asDiagonal() * kernel;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Kt);
    const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd Q2 = Q.rightCols(n - k);
    Eigen::MatrixXd C2 = Q2.transpose() * C * Q2;
    C2 = 0.5 * (C2 + C2.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C2);
    if (eig.info() != Eigen::Success) throw std::runtime_error("solve_gevp: eigensolver failed");
    values.resize(n);
    values.head(k).setZero();
    values.tail(n - k) = eig.eigenvalues();
    Y.resize(n, n);
    Y.leftCols(k) = Q.leftCols(k);
    Y.rightCols(n - k) = Q2 * eig.eigenvectors();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
    if (eig.info() != Eigen::Success) throw std::runtime_error("solve_gevp: eigensolver failed");
    values = eig.eigenvalues();
    Y = eig.eigenvectors();
  }

  const double lmax = std::max(values.maxCoeff(), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values[i] < -1e-10 * lmax)
      throw std::invalid_argument("solve_gevp: A is not positive semidefinite");
    if (values[i] < 0.0) values[i] = 0.0;
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    es.values[i] = values[order[i]];
    es.vectors.col(i) = d.asDiagonal() * Y.col(order[i]);
  }
  es.kernel_dim = static_cast<int>(k);
  return es;
}

EigenSelection select(const Eigensystem& system, double threshold, int floor) {
  if (!(threshold > 0.0)) throw std::invalid_argument("select: threshold must be positive");
  if (floor < 0) throw std::invalid_argument("select: floor must be non-negative");
  EigenSelection sel;
  sel.eigenvalues = system.values;
  sel.eigenvectors = system.vectors;
  sel.threshold = threshold;
  sel.kernel_dim = system.kernel_dim;
  const int n = static_cast<int>(system.values.size());
  int count = 0;
  while (count < n && system.values[count] < threshold) ++count;
  sel.count_selected = std::min(std::max(count, floor), n);
  if (sel.count_selected < n) sel.first_excluded = system.values[sel.count_selected];
  return sel;
}

}  // namespace adaschwarz
