#include <doctest.h>

#include <Eigen/LU>

#include "oracle.hpp"

using adaschwarz::build_cube_mesh;

TEST_CASE("dense stiffness: constants in the kernel, row sums of a linear function") {
  const auto mesh = build_cube_mesh(3);
  const std::vector<double> alpha(mesh.num_tets(), 2.0);
  const Eigen::MatrixXd A = oracle::dense_stiffness(mesh, alpha);
  CHECK((A * Eigen::VectorXd::Ones(A.rows())).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::VectorXd x(A.rows());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = mesh.nodes[i].x();
  CHECK(oracle::quadratic_form(A, x, x) == doctest::Approx(2.0));  // integral of alpha |grad x|^2
}

TEST_CASE("five-point solve reproduces bilinear-free harmonic data") {
  const Eigen::MatrixXd U = oracle::five_point_dirichlet(5, [](int i, int j) { return 2.0 * i - j + 1.0; });
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5; ++j) CHECK(U(i, j) == doctest::Approx(2.0 * i - j + 1.0));
}

TEST_CASE("Thomas solve against dense") {
  const int n = 6;
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(n - 1, -1.0), up = lo;
  Eigen::VectorXd di = Eigen::VectorXd::LinSpaced(n, 3.0, 5.0), b = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
  Eigen::MatrixXd T = di.asDiagonal();
  for (int i = 0; i + 1 < n; ++i) T(i, i + 1) = T(i + 1, i) = -1.0;
  CHECK((oracle::tridiagonal_solve(lo, di, up, b) - T.lu().solve(b)).norm() < 1e-13);
}

TEST_CASE("partition of unity sums to one off the boundary") {
  const auto mesh = build_cube_mesh(6);
  const auto theta = oracle::partition_of_unity(mesh, 3);
  CHECK(theta.size() == 27);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(mesh.num_nodes());
  for (const auto& t : theta) s += t;
  for (int x = 0; x < static_cast<int>(mesh.num_nodes()); ++x)
    CHECK(s[x] == doctest::Approx(mesh.on_boundary[x] ? 0.0 : 1.0));
  const int centre_vertex = mesh.node_index(2, 2, 2);
  CHECK(oracle::containing_subdomains(mesh, centre_vertex, 3).size() == 8);
}

TEST_CASE("preconditioned spectrum of an exact inverse is all ones") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(5, 5) * 3.0;
  A(0, 1) = A(1, 0) = 1.0;
  const Eigen::MatrixXd Ainv = A.inverse();
  const Eigen::VectorXd ev =
      oracle::dense_preconditioned_spectrum(A, [&](const Eigen::VectorXd& r) { return Eigen::VectorXd(Ainv * r); });
  CHECK((ev.array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("Fourier face eigenvalues") {
  const auto ev = oracle::fourier_face_eigenvalues(2);
  REQUIRE(ev.size() == 1);
  CHECK(ev[0] == doctest::Approx(4.0));
}
