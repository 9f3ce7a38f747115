#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace adaschwarz {

using Point = Eigen::Vector3d;

/**
 * \brief Structured tetrahedral triangulation of the unit cube.
 *
 * The cube is split into n^3 small cubes of side h = 1/n, each cut into six
 * tetrahedra sharing its main diagonal (Kuhn split). Nodes are numbered
 * lexicographically, i + (n+1) j + (n+1)^2 k.
 */
struct TetMesh {
  int n_per_axis = 0;
  double h = 0.0;
  std::vector<Point> nodes;
  std::vector<std::array<int, 4>> tets;
  std::vector<int> boundary_nodes;  // sorted
  std::vector<char> on_boundary;    // per node

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_tets() const { return tets.size(); }

  int node_index(int i, int j, int k) const {
    const int s = n_per_axis + 1;
    return i + s * (j + s * k);
  }

  /// Lattice coordinates (i, j, k) of a node.
  std::array<int, 3> lattice(int node) const {
    const int s = n_per_axis + 1;
    return {node % s, (node / s) % s, node / (s * s)};
  }

  /// Lattice coordinates of the small cube a tet belongs to.
  std::array<int, 3> cell_of_tet(int tet) const {
    const int c = tet / 6;
    const int n = n_per_axis;
    return {c % n, (c / n) % n, c / (n * n)};
  }

  Point barycenter(int tet) const;
};

/// Builds the Kuhn-split cube mesh. Throws std::invalid_argument for n < 1.
TetMesh build_cube_mesh(int n_per_axis);

struct ElementGeometry {
  double volume = 0.0;
  std::array<Eigen::Vector3d, 4> gradients;  // constant P1 basis gradients
};

ElementGeometry element_geometry(const TetMesh& mesh, int tet);

/// Triangular face of a tet together with the tets that own it (1 or 2).
struct FineFace {
  std::array<int, 3> nodes{};  // sorted
  std::array<int, 2> owners{-1, -1};
  int owner_count = 0;
};

/// Edge of a tet together with every tet containing it.
struct FineEdge {
  std::array<int, 2> nodes{};  // sorted
  std::vector<int> owners;
};

struct FineAdjacency {
  std::vector<FineFace> faces;  // sorted by node triple
  std::vector<FineEdge> edges;  // sorted by node pair
};

/// Exhaustive face/edge-to-tet adjacency for the whole mesh.
FineAdjacency fine_face_and_edge_adjacency(const TetMesh& mesh);

/**
 * Node -> incident tets in compressed form: the tets around node x are
 * tets[offsets[x]] .. tets[offsets[x+1]-1].
 */
struct NodeStar {
  std::vector<int> offsets;
  std::vector<int> tets;

  std::size_t size(int node) const { return offsets[node + 1] - offsets[node]; }
  const int* begin(int node) const { return tets.data() + offsets[node]; }
  const int* end(int node) const { return tets.data() + offsets[node + 1]; }
};

NodeStar build_node_star(const TetMesh& mesh);

/// Plain-text export: "x y z" per node, then four zero-based indices per tet.
void write_mesh(const TetMesh& mesh, std::ostream& os);

}  // namespace adaschwarz
