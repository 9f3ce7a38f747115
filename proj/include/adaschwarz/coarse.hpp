#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "adaschwarz/assembly.hpp"
#include "adaschwarz/coeff.hpp"
#include "adaschwarz/decomp.hpp"
#include "adaschwarz/gevp.hpp"
#include "adaschwarz/harmonic.hpp"
#include "adaschwarz/iforms.hpp"

namespace adaschwarz {

enum class CoarseKind { Wirebasket, Vertex };

const char* to_string(CoarseKind kind);
CoarseKind coarse_kind_from_string(const std::string& s);

/// Which interface eigenproblem a spectrum belongs to.
enum class StructureKind { Face, FaceInterior, Edge };

const char* to_string(StructureKind kind);

struct CoarseOptions {
  CoarseKind kind = CoarseKind::Wirebasket;
  bool enrichment = true;
  double face_threshold = 0.075;             // face problem, wirebasket space
  double face_interior_threshold = 0.0375;   // interior-face problem, vertex space
  double edge_threshold = 0.1512;            // edge problem, vertex space
};

/// Where a coarse basis column comes from.
struct ColumnTag {
  enum class Source { Interpolant, FaceEigen, FaceInteriorEigen, EdgeEigen };
  Source source = Source::Interpolant;
  int structure = -1;  // node id for interpolant columns, face/edge id otherwise
  int index = 0;       // eigenpair index within the structure
};

struct StructureSpectrum {
  StructureKind kind = StructureKind::Face;
  int structure = -1;
  EigenSelection selection;
};

/**
 * Explicit coarse basis: column j of `columns` is a discrete harmonic
 * finite element function over the system DOFs.
 *
 * Besides the basis it keeps what the coarse interpolator needs: face/edge
 * extension operators, b-form diagonals and the selected eigenvectors.
 */
class CoarseSpace {
 public:
  CoarseKind kind = CoarseKind::Wirebasket;
  bool enrichment = false;
  SparseMatrix columns;
  std::vector<ColumnTag> provenance;
  std::vector<StructureSpectrum> spectra;
  std::vector<std::string> warnings;

  int dim() const { return static_cast<int>(columns.cols()); }
  int count(ColumnTag::Source source) const;

  /**
   * Coefficients of the coarse interpolant I_0 u in this basis: nodal
   * values at the interpolation nodes, b-projection coefficients for the
   * eigenfunction columns (of u - I u on faces for the wirebasket space and
   * on edges for the vertex space, of u itself on faces for the vertex space).
   */
  Eigen::VectorXd interpolation_coefficients(const Eigen::VectorXd& u) const;
  /// I_0 u as a DOF vector.
  Eigen::VectorXd interpolate(const Eigen::VectorXd& u) const;

 private:
  friend class CoarseBuilder;
  struct StructureData {
    std::vector<int> nodes;            // interior nodes of the face / edge
    std::vector<int> boundary_nodes;   // face boundary or edge end nodes
    Eigen::MatrixXd extension;         // interior x boundary interpolant extension
    Eigen::VectorXd b_diag;
    Eigen::MatrixXd selected;          // selected B-orthonormal eigenvectors
  };
  std::map<std::pair<int, int>, StructureData> structures_;  // (StructureKind, id)
  std::vector<int> dof_of_node_;
};

/**
 * Builds interpolant and enrichment columns on a given problem. Face/edge
 * forms and face extension operators are assembled lazily and cached.
 */
class CoarseBuilder {
 public:
  CoarseBuilder(const TetMesh& mesh, const CoefficientField& field, const SparseMatrix& A_full,
                const AssembledSystem& system, const Decomposition& dec);

  const FaceForms& face_forms(int face);
  const EdgeForms& edge_forms(int edge);
  /// a_F-harmonic extension of face boundary values to the face interior.
  const Eigen::MatrixXd& face_extension(int face);
  /// a_E-harmonic extension of edge end values to the edge interior.
  const Eigen::MatrixXd& edge_extension(int edge);

  InterfaceTrace wirebasket_interpolant_trace(int node);
  InterfaceTrace vertex_interpolant_trace(int vertex_node);
  Eigen::VectorXd build_wirebasket_interpolant_column(int node);
  Eigen::VectorXd build_vertex_interpolant_column(int vertex_node);

  EigenSelection face_selection(int face, double threshold);
  EigenSelection face_interior_selection(int face, double threshold);
  EigenSelection edge_selection(int edge, double threshold);

  std::vector<InterfaceTrace> enrichment_traces(const EigenSelection& selection,
                                                StructureKind kind, int structure) const;
  /// Selected eigenvectors placed on the structure, zero on the rest of Gamma, extended.
  SparseMatrix build_enrichment_columns(const EigenSelection& selection, StructureKind kind,
                                        int structure);

  CoarseSpace build(const CoarseOptions& options);

  const HarmonicExtender& extender() const { return extender_; }

 private:
  const TetMesh& mesh_;
  const CoefficientField& field_;
  const AssembledSystem& system_;
  const Decomposition& dec_;
  HarmonicExtender extender_;
  std::vector<double> node_weight_;
  std::vector<std::unique_ptr<FaceForms>> face_forms_;
  std::vector<std::unique_ptr<EdgeForms>> edge_forms_;
  std::vector<std::unique_ptr<Eigen::MatrixXd>> face_ext_;
  std::vector<std::unique_ptr<Eigen::MatrixXd>> edge_ext_;
  // interface node -> (face, position in face.boundary_nodes)
  std::vector<std::vector<std::pair<int, int>>> faces_bounded_by_;
  // vertex node -> (edge, end index)
  std::vector<std::vector<std::pair<int, int>>> edges_ended_by_;
};

/// Galerkin coarse matrix R^T A R and its dense Cholesky factor.
struct CoarseOperator {
  Eigen::MatrixXd A0;
  Eigen::LLT<Eigen::MatrixXd> factor;
};

/**
 * Assembles A0 = R^T A R. Columns are discrete harmonic, so A R vanishes at
 * subdomain-interior DOFs and only interface rows contribute. Throws on an
 * empty basis or when A0 is not numerically SPD.
 */
CoarseOperator assemble_coarse_operator(const CoarseSpace& basis, const AssembledSystem& system,
                                        const Decomposition& dec);

}  // namespace adaschwarz
