#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "adaschwarz/coeff.hpp"
#include "adaschwarz/mesh.hpp"

namespace adaschwarz {

/// Symmetric sparse matrix, both triangles stored.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

/**
 * Stiffness system restricted to the interior (non-Dirichlet) nodes.
 * dof_of_node is -1 on boundary nodes.
 */
struct AssembledSystem {
  SparseMatrix A;
  Eigen::VectorXd rhs;
  std::vector<int> dof_of_node;
  std::vector<int> node_of_dof;

  int size() const { return static_cast<int>(node_of_dof.size()); }

  /// Scatters a DOF vector to all mesh nodes (zero on the boundary).
  Eigen::VectorXd to_nodes(const Eigen::VectorXd& u) const;
  /// Gathers the DOF entries of a nodal vector.
  Eigen::VectorXd to_dofs(const Eigen::VectorXd& nodal) const;
};

/// Full P1 stiffness matrix A_ij = sum_tau alpha_tau grad phi_i . grad phi_j |tau|.
SparseMatrix assemble_stiffness(const TetMesh& mesh, const CoefficientField& field);

/// Load vector for a constant source: f_i = f |supp phi_i| / 4.
Eigen::VectorXd assemble_load(const TetMesh& mesh, double f);

/// Removes the Dirichlet rows/columns. Throws if no interior node remains.
AssembledSystem eliminate_dirichlet(const SparseMatrix& A_full, const Eigen::VectorXd& rhs_full,
                                    std::span<const int> boundary_nodes);

/// sum over the given tets of alpha_tau |grad u|^2 |tau| for a nodal vector u.
double energy_on_tets(const TetMesh& mesh, const CoefficientField& field,
                      std::span<const int> tets, const Eigen::VectorXd& nodal);

/// Matrix Market coordinate export. Symmetric matrices write the lower triangle.
void write_matrix_market(const SparseMatrix& A, std::ostream& os, bool symmetric = true);
void write_matrix_market(const Eigen::VectorXd& v, std::ostream& os);

/// A(rows, cols) as a new sparse matrix; index lists need not be sorted.
SparseMatrix extract_submatrix(const SparseMatrix& A, std::span<const int> rows,
                               std::span<const int> cols);

}  // namespace adaschwarz
