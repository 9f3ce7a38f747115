#include <doctest.h>

#include <Eigen/LU>

#include "adaschwarz/mesh.hpp"

using namespace adaschwarz;

TEST_CASE("cube mesh counts") {
  for (int n : {1, 2, 5}) {
    const TetMesh mesh = build_cube_mesh(n);
    CHECK(mesh.num_nodes() == static_cast<std::size_t>((n + 1) * (n + 1) * (n + 1)));
    CHECK(mesh.num_tets() == static_cast<std::size_t>(6 * n * n * n));
    CHECK(mesh.boundary_nodes.size() ==
          static_cast<std::size_t>((n + 1) * (n + 1) * (n + 1) - (n - 1) * (n - 1) * (n - 1)));
    CHECK(mesh.h == doctest::Approx(1.0 / n));
  }
  CHECK_THROWS_AS(build_cube_mesh(0), std::invalid_argument);
}

TEST_CASE("every tet is positively oriented with volume h^3/6") {
  const TetMesh mesh = build_cube_mesh(3);
  double total = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.num_tets()); ++t) {
    const auto& v = mesh.tets[t];
    Eigen::Matrix3d J;
    for (int a = 1; a < 4; ++a) J.col(a - 1) = mesh.nodes[v[a]] - mesh.nodes[v[0]];
    CHECK(J.determinant() > 0.0);
    const ElementGeometry g = element_geometry(mesh, t);
    CHECK(g.volume == doctest::Approx(mesh.h * mesh.h * mesh.h / 6.0));
    Eigen::Vector3d s = Eigen::Vector3d::Zero();
    for (const auto& grad : g.gradients) s += grad;
    CHECK(s.norm() < 1e-12);
    total += g.volume;
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("Kuhn split is conforming: interior triangles have two owners") {
  const TetMesh mesh = build_cube_mesh(2);
  const FineAdjacency adj = fine_face_and_edge_adjacency(mesh);
  int boundary = 0;
  for (const auto& f : adj.faces) {
    CHECK((f.owner_count == 1 || f.owner_count == 2));
    const bool on_b = mesh.on_boundary[f.nodes[0]] && mesh.on_boundary[f.nodes[1]] &&
                      mesh.on_boundary[f.nodes[2]];
    if (f.owner_count == 1) {
      CHECK(on_b);
      ++boundary;
    }
  }
  CHECK(boundary == 6 * 2 * 2 * 2);  // two triangles per boundary square
}

TEST_CASE("node star lists each tet once per vertex") {
  const TetMesh mesh = build_cube_mesh(2);
  const NodeStar star = build_node_star(mesh);
  std::size_t sum = 0;
  for (int v = 0; v < static_cast<int>(mesh.num_nodes()); ++v) sum += star.size(v);
  CHECK(sum == 4 * mesh.num_tets());
  const int centre = mesh.node_index(1, 1, 1);
  CHECK(star.size(centre) == 24);
}
