#pragma once

#include <vector>

#include <Eigen/Core>

#include "adaschwarz/coeff.hpp"
#include "adaschwarz/decomp.hpp"
#include "adaschwarz/mesh.hpp"

namespace adaschwarz {

/**
 * Interface forms on one subdomain face.
 *
 * Local numbering: the face's interior nodes (SubFace::nodes) first, then
 * its boundary nodes (SubFace::boundary_nodes). A_face_full and
 * A_faceI_full use that numbering; A_face / A_faceI are their leading
 * interior blocks.
 */
struct FaceForms {
  Eigen::MatrixXd A_face_full;   // weighted 2D stiffness over every face triangle
  Eigen::MatrixXd A_face;        // restricted to interior nodes, SPD
  Eigen::MatrixXd A_faceI;       // sum over F^I triangles only, PSD
  Eigen::VectorXd B_face;        // diagonal: node weights of interior nodes
  Eigen::MatrixXd interior_kernel;  // indicator basis of the kernel of A_faceI
  bool has_interior = false;

  Eigen::Index interior_size() const { return A_face.rows(); }
};

/// Interface forms on one subdomain edge; same numbering idea, end nodes last.
struct EdgeForms {
  Eigen::MatrixXd A_edge_full;   // interior nodes, then end_nodes[0], end_nodes[1]
  Eigen::MatrixXd A_edge;        // tridiagonal, SPD
  Eigen::VectorXd B_edge;        // h^{-1} times node weights
};

/**
 * Assembles the face forms. With require_interior the call throws when the
 * face has no F^I triangles; otherwise A_faceI is left empty.
 */
FaceForms face_forms(const TetMesh& mesh, const CoefficientField& field,
                     const std::vector<double>& node_weight, const SubFace& face,
                     bool require_interior = true);

EdgeForms edge_forms(const TetMesh& mesh, const CoefficientField& field,
                     const std::vector<double>& node_weight, const SubEdge& edge);

}  // namespace adaschwarz
