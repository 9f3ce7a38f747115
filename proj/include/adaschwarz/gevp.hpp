#pragma once

#include <limits>

#include <Eigen/Core>

namespace adaschwarz {

/// Full eigensystem of A x = lambda B x, ascending, B-orthonormal vectors.
struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int kernel_dim = 0;  // number of exactly-zero eigenvalues from a supplied kernel
};

/**
 * Dense symmetric generalized eigensolver for a PSD A and a positive
 * diagonal B (given as a vector), via the reduction B^{-1/2} A B^{-1/2}.
 *
 * When `kernel` is non-empty its columns are taken as a basis of ker(A);
 * those directions are split off exactly and get eigenvalue 0. Negative
 * eigenvalues down to -1e-10 lambda_max are clamped to zero; anything
 * more negative means A is not PSD and throws.
 */
Eigensystem solve_gevp(const Eigen::MatrixXd& A, const Eigen::VectorXd& B_diag,
                       const Eigen::MatrixXd& kernel = Eigen::MatrixXd());

struct EigenSelection {
  Eigen::VectorXd eigenvalues;   // full ascending spectrum
  Eigen::MatrixXd eigenvectors;  // matching B-orthonormal vectors
  int count_selected = 0;
  double threshold = 0.0;
  double first_excluded = std::numeric_limits<double>::infinity();
  int kernel_dim = 0;

  Eigen::MatrixXd selected_vectors() const { return eigenvectors.leftCols(count_selected); }
};

/**
 * Keeps every pair with lambda < threshold (strict), but at least `floor`
 * pairs when the spectrum has that many.
 */
EigenSelection select(const Eigensystem& system, double threshold, int floor);

}  // namespace adaschwarz
