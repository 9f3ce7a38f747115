#pragma once

#include <vector>

#include <Eigen/Core>

#include "adaschwarz/assembly.hpp"
#include "adaschwarz/decomp.hpp"
#include "adaschwarz/linalg.hpp"
#include "adaschwarz/mesh.hpp"

namespace adaschwarz {

/// Sparse nodal function on the interface Gamma: (node, value) pairs.
struct InterfaceTrace {
  std::vector<int> nodes;
  std::vector<double> values;
};

/**
 * Discrete harmonic extension into the (non-overlapping) subdomains.
 *
 * Holds one factorization of the interior stiffness block per subdomain
 * together with its interior-by-boundary coupling block, both taken from
 * the full (pre-Dirichlet) stiffness matrix. Rows of interior nodes only
 * see tets of their own subdomain, so these blocks are exactly the ones
 * of the local form a_{|Omega_k}.
 */
class HarmonicExtender {
 public:
  HarmonicExtender(const TetMesh& mesh, const SparseMatrix& A_full, const Decomposition& dec);

  /**
   * Interior values of the extension of boundary data given on
   * dec.boundary_nodes[k] (same order); dOmega entries are ordinary data.
   */
  Eigen::VectorXd extend(int k, const Eigen::VectorXd& boundary_values) const;
  Eigen::MatrixXd extend(int k, const Eigen::MatrixXd& boundary_values) const;

  /**
   * Extends a function given on Gamma (zero elsewhere on Gamma and on dOmega)
   * harmonically into every subdomain. The result is over the system DOFs.
   * Throws if a trace node is not an interface node.
   */
  Eigen::VectorXd extend_interface_function(const InterfaceTrace& trace,
                                            const AssembledSystem& system) const;

  /// Values on one face's interior nodes, zero elsewhere on Gamma.
  Eigen::VectorXd extend_face_function(int face, const Eigen::VectorXd& values,
                                       const AssembledSystem& system) const;
  /// Values on one edge's interior nodes, zero elsewhere on Gamma.
  Eigen::VectorXd extend_edge_function(int edge, const Eigen::VectorXd& values,
                                       const AssembledSystem& system) const;

  /// Batched extension of many traces; column j of the result extends traces[j].
  SparseMatrix extend_many(const std::vector<InterfaceTrace>& traces,
                           const AssembledSystem& system) const;

  const Decomposition& decomposition() const { return dec_; }

 private:
  void check_trace(const InterfaceTrace& trace) const;

  const Decomposition& dec_;
  std::vector<SparseCholesky> interior_factor_;
  std::vector<SparseMatrix> coupling_;  // A(interior_k, boundary_k)
  std::vector<std::vector<int>> subdomains_of_node_;  // only filled for interface nodes
};

}  // namespace adaschwarz
