#include "adaschwarz/assembly.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace adaschwarz {

Eigen::VectorXd AssembledSystem::to_nodes(const Eigen::VectorXd& u) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dof_of_node.size()));
  for (int d = 0; d < size(); ++d) x[node_of_dof[d]] = u[d];
  return x;
}

Eigen::VectorXd AssembledSystem::to_dofs(const Eigen::VectorXd& nodal) const {
  Eigen::VectorXd u(size());
  for (int d = 0; d < size(); ++d) u[d] = nodal[node_of_dof[d]];
  return u;
}

namespace {

// Column pattern of the P1 matrix: node j couples to every vertex of its star.
SparseMatrix stiffness_pattern(const TetMesh& mesh) {
  const NodeStar star = build_node_star(mesh);
  const int n = static_cast<int>(mesh.nodes.size());
  std::vector<std::vector<int>> cols(n);
  std::size_t nnz = 0;
  for (int j = 0; j < n; ++j) {
    auto& c = cols[j];
    for (const int* t = star.begin(j); t != star.end(j); ++t)
      for (int v : mesh.tets[*t]) c.push_back(v);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    nnz += c.size();
  }
  SparseMatrix A(n, n);
  A.reserve(static_cast<Eigen::Index>(nnz));
  for (int j = 0; j < n; ++j) {
    A.startVec(j);
    for (int i : cols[j]) A.insertBack(i, j) = 0.0;
  }
  A.finalize();
  return A;
}

}  // namespace

SparseMatrix assemble_stiffness(const TetMesh& mesh, const CoefficientField& field) {
  if (field.alpha.size() != mesh.tets.size())
    throw std::invalid_argument("assemble_stiffness: coefficient has " +
                                std::to_string(field.alpha.size()) + " entries, mesh has " +
                                std::to_string(mesh.tets.size()) + " tets");
  SparseMatrix A = stiffness_pattern(mesh);
  for (int e = 0; e < static_cast<int>(mesh.tets.size()); ++e) {
    const ElementGeometry geo = element_geometry(mesh, e);
    const double w = field.alpha[e] * geo.volume;
    const auto& t = mesh.tets[e];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        A.coeffRef(t[a], t[b]) += w * geo.gradients[a].dot(geo.gradients[b]);
  }
  return A;
}

Eigen::VectorXd assemble_load(const TetMesh& mesh, double f) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(mesh.nodes.size()));
  if (f == 0.0) return b;
  for (int e = 0; e < static_cast<int>(mesh.tets.size()); ++e) {
    const double share = f * element_geometry(mesh, e).volume / 4.0;
    for (int v : mesh.tets[e]) b[v] += share;
  }
  return b;
}

AssembledSystem eliminate_dirichlet(const SparseMatrix& A_full, const Eigen::VectorXd& rhs_full,
                                    std::span<const int> boundary_nodes) {
  const int n = static_cast<int>(A_full.rows());
  if (A_full.cols() != n || rhs_full.size() != n)
    throw std::invalid_argument("eliminate_dirichlet: dimension mismatch");
  AssembledSystem sys;
  sys.dof_of_node.assign(n, 0);
  for (int b : boundary_nodes) sys.dof_of_node.at(b) = -1;
  for (int i = 0; i < n; ++i)
    if (sys.dof_of_node[i] == 0) {
      sys.dof_of_node[i] = static_cast<int>(sys.node_of_dof.size());
      sys.node_of_dof.push_back(i);
    }
  if (sys.node_of_dof.empty())
    throw std::invalid_argument(
        "eliminate_dirichlet: no interior nodes remain (the mesh needs n_per_axis >= 2)");
  sys.A = extract_submatrix(A_full, sys.node_of_dof, sys.node_of_dof);
  sys.rhs = Eigen::VectorXd(sys.size());
  for (int d = 0; d < sys.size(); ++d) sys.rhs[d] = rhs_full[sys.node_of_dof[d]];
  return sys;
}

double energy_on_tets(const TetMesh& mesh, const CoefficientField& field,
                      std::span<const int> tets, const Eigen::VectorXd& nodal) {
  double energy = 0.0;
  for (int e : tets) {
    const ElementGeometry geo = element_geometry(mesh, e);
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    for (int a = 0; a < 4; ++a) g += nodal[mesh.tets[e][a]] * geo.gradients[a];
    energy += field.alpha[e] * geo.volume * g.squaredNorm();
  }
  return energy;
}

void write_matrix_market(const SparseMatrix& A, std::ostream& os, bool symmetric) {
  Eigen::Index nnz = 0;
  for (int j = 0; j < A.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
      if (!symmetric || it.row() >= it.col()) ++nnz;
  os << "%%MatrixMarket matrix coordinate real " << (symmetric ? "symmetric" : "general")
     << '\n';
  os << A.rows() << ' ' << A.cols() << ' ' << nnz << '\n';
  os.precision(17);
  for (int j = 0; j < A.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(A, j); it; ++it)
      if (!symmetric || it.row() >= it.col())
        os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
}

void write_matrix_market(const Eigen::VectorXd& v, std::ostream& os) {
  os << "%%MatrixMarket matrix array real general\n" << v.size() << " 1\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << v[i] << '\n';
}

SparseMatrix extract_submatrix(const SparseMatrix& A, std::span<const int> rows,
                               std::span<const int> cols) {
  std::vector<int> local_row(static_cast<std::size_t>(A.rows()), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) local_row[rows[i]] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (SparseMatrix::InnerIterator it(A, cols[j]); it; ++it) {
      const int r = local_row[it.row()];
      if (r >= 0) trip.emplace_back(r, static_cast<int>(j), it.value());
    }
  SparseMatrix S(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

}  // namespace adaschwarz
