#include <doctest.h>

#include <random>

#include <Eigen/Cholesky>

#include "adaschwarz/harmonic.hpp"
#include "adaschwarz/problem.hpp"
#include "oracle.hpp"

using namespace adaschwarz;

TEST_CASE("extension matches a dense local solve and is A-orthogonal to bubbles") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> U(1.0, 1e3);
  const Problem p = make_problem(2, 3, [&](const TetMesh&, int) { return U(rng); });
  const HarmonicExtender ext(p.mesh, p.A_full, p.dec);
  std::normal_distribution<double> N;
  for (int k = 0; k < p.dec.num_subdomains(); ++k) {
    const auto& bn = p.dec.boundary_nodes[k];
    const auto& in = p.dec.interior_nodes[k];
    const Eigen::MatrixXd Ak = oracle::dense_stiffness(p.mesh, p.field.alpha, p.dec.tets_of_subdomain[k]);
    const Eigen::MatrixXd Aii = oracle::restrict(Ak, in);
    Eigen::MatrixXd Aib(in.size(), bn.size());
    for (std::size_t i = 0; i < in.size(); ++i)
      for (std::size_t j = 0; j < bn.size(); ++j) Aib(i, j) = Ak(in[i], bn[j]);
    Eigen::VectorXd g(bn.size());
    for (auto& x : g) x = N(rng);
    const Eigen::VectorXd ref = Aii.ldlt().solve(-Aib * g);
    const Eigen::VectorXd got = ext.extend(k, g);
    CHECK((got - ref).norm() < 1e-10 * ref.norm());
  }
}

TEST_CASE("constants extend to constants") {
  const Problem p = make_problem(2, 4, 1.0, {});
  const HarmonicExtender ext(p.mesh, p.A_full, p.dec);
  for (int k = 0; k < 8; ++k) {
    const Eigen::VectorXd g = Eigen::VectorXd::Constant(p.dec.boundary_nodes[k].size(), 2.5);
    CHECK((ext.extend(k, g).array() - 2.5).abs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("interface functions are discrete harmonic") {
  const Problem p = make_problem(2, 4, 1.0, {});
  const HarmonicExtender ext(p.mesh, p.A_full, p.dec);
  const Eigen::VectorXd vals = Eigen::VectorXd::LinSpaced(p.dec.faces[3].nodes.size(), 1.0, 2.0);
  const Eigen::VectorXd u = ext.extend_face_function(3, vals, p.system);
  const Eigen::VectorXd Au = p.system.A * u;
  for (int d = 0; d < p.system.size(); ++d) {
    const int x = p.system.node_of_dof[d];
    if (p.dec.node_class[x] == NodeClass::SubdomainInterior) CHECK(std::abs(Au[d]) < 1e-12);
    else if (p.dec.node_class[x] != NodeClass::Face) CHECK(u[d] == 0.0);
  }
  InterfaceTrace bad{{p.dec.interior_nodes[0][0]}, {1.0}};
  CHECK_THROWS(ext.extend_interface_function(bad, p.system));
}

TEST_CASE("batched extension equals single extensions") {
  const Problem p = make_problem(2, 3, 1.0, {});
  const HarmonicExtender ext(p.mesh, p.A_full, p.dec);
  std::vector<InterfaceTrace> traces;
  traces.push_back({{p.dec.vertices[0]}, {1.0}});
  traces.push_back({p.dec.edges[1].nodes, std::vector<double>(p.dec.edges[1].nodes.size(), -1.0)});
  const SparseMatrix M = ext.extend_many(traces, p.system);
  for (std::size_t j = 0; j < traces.size(); ++j) {
    const Eigen::VectorXd single = ext.extend_interface_function(traces[j], p.system);
    CHECK((Eigen::VectorXd(M.col(static_cast<int>(j))) - single).norm() < 1e-13);
  }
}
