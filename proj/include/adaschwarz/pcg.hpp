#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "adaschwarz/assembly.hpp"

namespace adaschwarz {

using LinearOperator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct LanczosEstimate {
  double lambda_min = 1.0;
  double lambda_max = 1.0;
  double kappa = 1.0;
  bool defined = false;  // false with fewer than two CG steps
};

struct SolveReport {
  int iterations = 0;
  std::vector<double> relative_residual_history;  // recurrence residuals, entry 0 is 1
  double final_relative_residual = 0.0;           // true residual ||b - Ax|| / ||b||
  double cond_estimate = 1.0;
  double lambda_min_est = 1.0;
  double lambda_max_est = 1.0;
  bool estimate_defined = false;
  bool converged = false;
  std::vector<double> alphas;
  std::vector<double> betas;
};

struct SolveResult {
  Eigen::VectorXd x;
  SolveReport report;
};

/**
 * Preconditioned CG from a zero initial guess. Stops once the true residual
 * satisfies ||b - Ax|| <= rel_tol ||b||. A non-positive curvature p^T A p
 * or r^T M r throws std::runtime_error.
 */
SolveResult pcg_solve(const SparseMatrix& A, const LinearOperator& precond, const Eigen::VectorXd& b,
                      double rel_tol, int max_iter);

/**
 * Extreme eigenvalues of the Lanczos tridiagonal built from the CG
 * coefficients: T_jj = 1/alpha_j + beta_{j-1}/alpha_{j-1},
 * T_{j,j+1} = sqrt(beta_j)/alpha_j. Needs one more alpha than beta.
 */
LanczosEstimate lanczos_condition_estimate(const std::vector<double>& alphas,
                                           const std::vector<double>& betas);

}  // namespace adaschwarz
