#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "adaschwarz/gevp.hpp"
#include "oracle.hpp"

using namespace adaschwarz;

namespace {

Eigen::MatrixXd five_point(int n) {
  const int ni = n - 1;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(ni * ni, ni * ni);
  for (int j = 0; j < ni; ++j)
    for (int i = 0; i < ni; ++i) {
      const int r = i + ni * j;
      L(r, r) = 4.0;
      if (i > 0) L(r, r - 1) = -1.0;
      if (i + 1 < ni) L(r, r + 1) = -1.0;
      if (j > 0) L(r, r - ni) = -1.0;
      if (j + 1 < ni) L(r, r + ni) = -1.0;
    }
  return L;
}

}  // namespace

TEST_CASE("5-point spectrum against the Fourier oracle") {
  for (int n : {2, 3, 6, 10}) {
    const Eigensystem es = solve_gevp(five_point(n), Eigen::VectorXd::Ones((n - 1) * (n - 1)));
    const auto ref = oracle::fourier_face_eigenvalues(n);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(es.values[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    const double s = std::sin(std::numbers::pi / (2.0 * n));
    CHECK(std::abs(es.values[0] - 8 * s * s) < 1e-12);
  }
  CHECK(solve_gevp(five_point(2), Eigen::VectorXd::Ones(1)).values[0] == doctest::Approx(4.0));
}

TEST_CASE("vectors are B-orthonormal and solve the pencil") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(0.5, 50.0);
  const int n = 12;
  Eigen::MatrixXd G = Eigen::MatrixXd::NullaryExpr(n, n, [&] { return U(rng); });
  const Eigen::MatrixXd A = G * G.transpose();
  Eigen::VectorXd B(n);
  for (auto& b : B) b = U(rng);
  const Eigensystem es = solve_gevp(A, B);
  const Eigen::MatrixXd V = es.vectors;
  CHECK((V.transpose() * B.asDiagonal() * V - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
  for (int i = 0; i < n; ++i)
    CHECK((A * V.col(i) - es.values[i] * B.cwiseProduct(V.col(i))).norm() < 1e-8 * A.norm());
  for (int i = 1; i < n; ++i) CHECK(es.values[i] >= es.values[i - 1]);
}

TEST_CASE("supplied kernel is split off exactly") {
  const int n = 6;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {  // path Laplacian, kernel = constants
    A(i, i) += 1;
    A(i + 1, i + 1) += 1;
    A(i, i + 1) -= 1;
    A(i + 1, i) -= 1;
  }
  Eigen::VectorXd B = Eigen::VectorXd::LinSpaced(n, 1.0, 3.0);
  const Eigensystem es = solve_gevp(A, B, Eigen::MatrixXd::Ones(n, 1));
  CHECK(es.kernel_dim == 1);
  CHECK(es.values[0] == 0.0);
  const Eigen::VectorXd v = es.vectors.col(0);
  CHECK((v.array() - v[0]).abs().maxCoeff() < 1e-14);
  CHECK(v.dot(B.cwiseProduct(v)) == doctest::Approx(1.0));
  CHECK(es.values[1] > 1e-3);
}

TEST_CASE("indefinite matrices throw") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(3, 3);
  A(2, 2) = -1.0;
  CHECK_THROWS(solve_gevp(A, Eigen::VectorXd::Ones(3)));
}

TEST_CASE("selection is strict with a floor") {
  Eigensystem es;
  es.values = Eigen::Vector4d(0.1, 0.2, 0.2, 0.5);
  es.vectors = Eigen::MatrixXd::Identity(4, 4);
  EigenSelection s = select(es, 0.2, 0);
  CHECK(s.count_selected == 1);
  CHECK(s.first_excluded == doctest::Approx(0.2));
  s = select(es, 0.05, 0);
  CHECK(s.count_selected == 0);
  s = select(es, 0.05, 1);
  CHECK(s.count_selected == 1);
  s = select(es, 1.0, 0);
  CHECK(s.count_selected == 4);
  CHECK(std::isinf(s.first_excluded));
}
