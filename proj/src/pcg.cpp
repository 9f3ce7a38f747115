#include "adaschwarz/pcg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace adaschwarz {

LanczosEstimate lanczos_condition_estimate(const std::vector<double>& alphas,
                                           const std::vector<double>& betas) {
  const int k = static_cast<int>(alphas.size());
  if (k == 0) return {};
  if (static_cast<int>(betas.size()) < k - 1)
    throw std::invalid_argument("lanczos_condition_estimate: need k-1 betas for k alphas");
  Eigen::VectorXd diag(k);
  Eigen::VectorXd off(std::max(k - 1, 0));
  for (int j = 0; j < k; ++j) {
    diag[j] = 1.0 / alphas[j] + (j > 0 ? betas[j - 1] / alphas[j - 1] : 0.0);
    if (j + 1 < k) off[j] = std::sqrt(betas[j]) / alphas[j];
  }
  LanczosEstimate est;
  if (k == 1) {
    est.lambda_min = est.lambda_max = diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    est.lambda_min = eig.eigenvalues()[0];
    est.lambda_max = eig.eigenvalues()[k - 1];
  }
  est.kappa = est.lambda_max / est.lambda_min;
  est.defined = k >= 2;
  return est;
}

SolveResult pcg_solve(const SparseMatrix& A, const LinearOperator& precond, const Eigen::VectorXd& b,
                      double rel_tol, int max_iter) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("pcg_solve: dimension mismatch");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("pcg_solve: rel_tol must be positive");
  SolveResult res;
  SolveReport& rep = res.report;
  res.x = Eigen::VectorXd::Zero(b.size());
  const double bnorm = b.norm();
  rep.relative_residual_history.push_back(bnorm > 0.0 ? 1.0 : 0.0);
  if (bnorm == 0.0) {
    rep.converged = true;
    return res;
  }

  Eigen::VectorXd r = b;
  Eigen::VectorXd z = precond(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  if (!(rz > 0.0)) throw std::runtime_error("pcg_solve: preconditioner is not positive definite");

  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd Ap = A * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) throw std::runtime_error("pcg_solve: breakdown, p^T A p <= 0 (matrix not SPD)");
    const double alpha = rz / pAp;
    res.x += alpha * p;
    r -= alpha * Ap;
    rep.alphas.push_back(alpha);
    rep.iterations = it + 1;
    const double rel = r.norm() / bnorm;
    rep.relative_residual_history.push_back(rel);
    if (rel <= rel_tol) {
      const double true_rel = (b - A * res.x).norm() / bnorm;
      if (true_rel <= rel_tol) {
        rep.converged = true;
        break;
      }
    }
    z = precond(r);
    const double rz_new = r.dot(z);
    if (!(rz_new > 0.0)) {
      if (rz_new == 0.0) break;
      throw std::runtime_error("pcg_solve: preconditioner is not positive definite");
    }
    const double beta = rz_new / rz;
    rep.betas.push_back(beta);
    rz = rz_new;
    p = z + beta * p;
  }
  rep.final_relative_residual = (b - A * res.x).norm() / bnorm;
  rep.converged = rep.final_relative_residual <= rel_tol;

  const LanczosEstimate est = lanczos_condition_estimate(rep.alphas, rep.betas);
  rep.cond_estimate = est.kappa;
  rep.lambda_min_est = est.lambda_min;
  rep.lambda_max_est = est.lambda_max;
  rep.estimate_defined = est.defined;
  return res;
}

}  // namespace adaschwarz
