#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "adaschwarz/mesh.hpp"

namespace adaschwarz {

/// Open subdomain face F_kl = interior of the common boundary of Omega_k and Omega_l (k > l).
struct SubFace {
  int k = -1;
  int l = -1;
  int normal_axis = -1;
  int nodes_per_side = 0;             // H/h
  std::vector<int> nodes;             // interior face nodes, row-major in the face lattice
  std::vector<int> boundary_nodes;    // nodes on the closed face boundary
  std::vector<FineFace> triangles;    // owners[0] in Omega_k, owners[1] in Omega_l
  std::vector<char> touches_boundary; // per triangle: closure meets the face boundary
};

/// Open subdomain edge, a segment of a cut line between two lattice points.
struct SubEdge {
  int axis = -1;
  std::vector<int> nodes;             // interior edge nodes, ordered along the axis
  std::array<int, 2> end_nodes{};     // first and last lattice point of the segment
  std::vector<FineEdge> segments;     // consecutive fine edges from end_nodes[0]
  std::vector<int> subdomains;        // subdomains whose closure contains the edge
};

enum class NodeClass : std::uint8_t { SubdomainInterior, Face, Edge, Vertex, DomainBoundary };

/// Uniform m x m x m partition of the unit cube aligned with the mesh.
struct Decomposition {
  int m_per_axis = 0;
  int n_per_axis = 0;
  int H_over_h = 0;
  double H = 0.0;
  std::vector<int> subdomain_of_tet;
  std::vector<SubFace> faces;
  std::vector<SubEdge> edges;
  std::vector<int> vertices;
  std::vector<int> wirebasket_nodes;                // sorted
  std::vector<std::vector<int>> interior_nodes;     // Omega_{i,h}
  std::vector<std::vector<int>> boundary_nodes;     // closed boundary of Omega_i, incl. dOmega
  std::vector<std::vector<int>> overlap_nodes;      // interior nodes of Omega'_i, sorted
  std::vector<std::vector<int>> tets_of_subdomain;
  std::vector<NodeClass> node_class;
  std::vector<int> node_structure;                  // subdomain / face / edge / vertex index

  int num_subdomains() const { return m_per_axis * m_per_axis * m_per_axis; }
  int subdomain_index(int sx, int sy, int sz) const {
    return sx + m_per_axis * (sy + m_per_axis * sz);
  }
  /// Subdomains whose closure contains the node (N_x of them).
  std::vector<int> subdomains_containing(const TetMesh& mesh, int node) const;
  bool on_interface(int node) const {
    const NodeClass c = node_class[node];
    return c == NodeClass::Face || c == NodeClass::Edge || c == NodeClass::Vertex;
  }
};

/// Partitions the mesh. Throws std::invalid_argument unless m divides n.
Decomposition decompose(const TetMesh& mesh, int m_per_axis);

/**
 * Interior node sets of the overlapping subdomains: Omega'_i is Omega_i plus
 * every tet whose closure meets the boundary of Omega_i, and a node is
 * interior when its whole tet star lies in Omega'_i and it is not on dOmega.
 */
std::vector<std::vector<int>> build_overlap(const TetMesh& mesh, const Decomposition& dec);

struct FaceSplit {
  std::vector<int> boundary_layer;  // triangles touching the face boundary (F^B)
  std::vector<int> interior;        // remaining triangles (F^I)
};

/// Splits face triangles into F^B and F^I. Throws if F^I is empty (H/h <= 2).
FaceSplit split_face_interior(const SubFace& face);

/// "node,class,structure" per mesh node.
void write_classification_csv(const Decomposition& dec, std::ostream& os);

const char* to_string(NodeClass c);

}  // namespace adaschwarz
