#include <doctest.h>

#include "adaschwarz/pcg.hpp"

using namespace adaschwarz;

namespace {

SparseMatrix diag(const Eigen::VectorXd& d) {
  SparseMatrix A(d.size(), d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) A.insert(i, i) = d[i];
  A.makeCompressed();
  return A;
}

const LinearOperator identity = [](const Eigen::VectorXd& r) { return r; };

}  // namespace

TEST_CASE("identity converges in one step with kappa 1") {
  const SparseMatrix A = diag(Eigen::VectorXd::Ones(7));
  const SolveResult r = pcg_solve(A, identity, Eigen::VectorXd::LinSpaced(7, 1, 7), 1e-10, 50);
  CHECK(r.report.converged);
  CHECK(r.report.iterations == 1);
  CHECK(r.report.cond_estimate == 1.0);
  CHECK(!r.report.estimate_defined);
}

TEST_CASE("diag(1..10) gives kappa close to 10") {
  const SparseMatrix A = diag(Eigen::VectorXd::LinSpaced(10, 1, 10));
  const SolveResult r = pcg_solve(A, identity, Eigen::VectorXd::Ones(10), 1e-12, 100);
  CHECK(r.report.converged);
  CHECK(r.report.iterations <= 10);
  CHECK(r.report.estimate_defined);
  CHECK(r.report.cond_estimate == doctest::Approx(10.0).epsilon(0.01));
  CHECK((A * r.x - Eigen::VectorXd::Ones(10)).norm() <= 1e-12 * std::sqrt(10.0));
  CHECK(r.report.relative_residual_history.front() == 1.0);
}

TEST_CASE("preconditioning with the exact inverse") {
  const Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(20, 1, 1e4);
  const SparseMatrix A = diag(d);
  const SolveResult r =
      pcg_solve(A, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(v.cwiseQuotient(d)); },
                Eigen::VectorXd::Ones(20), 1e-10, 100);
  CHECK(r.report.iterations == 1);
}

TEST_CASE("zero right-hand side and breakdown") {
  const SparseMatrix A = diag(Eigen::VectorXd::Ones(3));
  const SolveResult r = pcg_solve(A, identity, Eigen::VectorXd::Zero(3), 1e-6, 10);
  CHECK(r.report.converged);
  CHECK(r.x.norm() == 0.0);
  const SparseMatrix B = diag(Eigen::Vector3d(1.0, -1.0, 1.0));
  CHECK_THROWS_AS(pcg_solve(B, identity, Eigen::Vector3d(0.0, 1.0, 0.0), 1e-6, 10), std::runtime_error);
  const SolveResult capped = pcg_solve(diag(Eigen::VectorXd::LinSpaced(50, 1, 50)), identity,
                                       Eigen::VectorXd::Ones(50), 1e-14, 3);
  CHECK(!capped.report.converged);
  CHECK(capped.report.iterations == 3);
}

TEST_CASE("Lanczos estimate from explicit coefficients") {
  // CG on diag(1, 4) with b = (1, 1)
  const SparseMatrix A = diag(Eigen::Vector2d(1.0, 4.0));
  const SolveResult r = pcg_solve(A, identity, Eigen::Vector2d(1.0, 1.0), 1e-14, 10);
  const LanczosEstimate e = lanczos_condition_estimate(r.report.alphas, r.report.betas);
  CHECK(e.defined);
  CHECK(e.lambda_min == doctest::Approx(1.0));
  CHECK(e.lambda_max == doctest::Approx(4.0));
  CHECK(!lanczos_condition_estimate({0.5}, {}).defined);
}
