#include "adaschwarz/mesh.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace adaschwarz {

namespace {

// The six monotone lattice paths from (0,0,0) to (1,1,1). Every tet of the
// Kuhn split is the convex hull of one such path.
constexpr std::array<std::array<int, 3>, 6> kAxisOrders = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

double signed_volume(const Point& a, const Point& b, const Point& c, const Point& d) {
  Eigen::Matrix3d J;
  J.col(0) = b - a;
  J.col(1) = c - a;
  J.col(2) = d - a;
  return J.determinant() / 6.0;
}

}  // namespace

Point TetMesh::barycenter(int tet) const {
  const auto& t = tets[tet];
  return 0.25 * (nodes[t[0]] + nodes[t[1]] + nodes[t[2]] + nodes[t[3]]);
}

TetMesh build_cube_mesh(int n_per_axis) {
  if (n_per_axis < 1)
    throw std::invalid_argument("build_cube_mesh: n_per_axis must be >= 1, got " +
                                std::to_string(n_per_axis));
  TetMesh mesh;
  const int n = n_per_axis;
  const int s = n + 1;
  mesh.n_per_axis = n;
  mesh.h = 1.0 / n;

  mesh.nodes.resize(static_cast<std::size_t>(s) * s * s);
  mesh.on_boundary.assign(mesh.nodes.size(), 0);
  for (int k = 0; k < s; ++k)
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < s; ++i) {
        const int id = mesh.node_index(i, j, k);
        mesh.nodes[id] = Point(i * mesh.h, j * mesh.h, k * mesh.h);
        if (i == 0 || j == 0 || k == 0 || i == n || j == n || k == n) {
          mesh.on_boundary[id] = 1;
          mesh.boundary_nodes.push_back(id);
        }
      }

  mesh.tets.reserve(static_cast<std::size_t>(6) * n * n * n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        for (const auto& order : kAxisOrders) {
          std::array<int, 3> p{i, j, k};
          std::array<int, 4> t{};
          t[0] = mesh.node_index(p[0], p[1], p[2]);
          for (int step = 0; step < 3; ++step) {
            ++p[order[step]];
            t[step + 1] = mesh.node_index(p[0], p[1], p[2]);
          }
          // odd permutations come out negatively oriented
          if (signed_volume(mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]],
                            mesh.nodes[t[3]]) < 0.0)
            std::swap(t[2], t[3]);
          mesh.tets.push_back(t);
        }
      }
  return mesh;
}

ElementGeometry element_geometry(const TetMesh& mesh, int tet) {
  if (tet < 0 || static_cast<std::size_t>(tet) >= mesh.tets.size())
    throw std::out_of_range("element_geometry: tet index " + std::to_string(tet) +
                            " out of range");
  const auto& t = mesh.tets[tet];
  const Point& x0 = mesh.nodes[t[0]];
  Eigen::Matrix3d J;
  J.col(0) = mesh.nodes[t[1]] - x0;
  J.col(1) = mesh.nodes[t[2]] - x0;
  J.col(2) = mesh.nodes[t[3]] - x0;

  ElementGeometry geo;
  geo.volume = J.determinant() / 6.0;
  // rows of J^{-1} are the gradients of barycentric coordinates 1..3
  const Eigen::Matrix3d Jinv = J.inverse();
  for (int a = 1; a < 4; ++a) geo.gradients[a] = Jinv.row(a - 1).transpose();
  geo.gradients[0] = -(geo.gradients[1] + geo.gradients[2] + geo.gradients[3]);
  return geo;
}

FineAdjacency fine_face_and_edge_adjacency(const TetMesh& mesh) {
  struct FaceEntry {
    std::array<int, 3> key;
    int tet;
  };
  struct EdgeEntry {
    std::array<int, 2> key;
    int tet;
  };
  std::vector<FaceEntry> fe;
  std::vector<EdgeEntry> ee;
  fe.reserve(mesh.tets.size() * 4);
  ee.reserve(mesh.tets.size() * 6);
  for (int e = 0; e < static_cast<int>(mesh.tets.size()); ++e) {
    auto t = mesh.tets[e];
    std::sort(t.begin(), t.end());
    fe.push_back({{t[1], t[2], t[3]}, e});
    fe.push_back({{t[0], t[2], t[3]}, e});
    fe.push_back({{t[0], t[1], t[3]}, e});
    fe.push_back({{t[0], t[1], t[2]}, e});
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) ee.push_back({{t[a], t[b]}, e});
  }
  std::sort(fe.begin(), fe.end(), [](const FaceEntry& a, const FaceEntry& b) {
    return a.key != b.key ? a.key < b.key : a.tet < b.tet;
  });
  std::sort(ee.begin(), ee.end(), [](const EdgeEntry& a, const EdgeEntry& b) {
    return a.key != b.key ? a.key < b.key : a.tet < b.tet;
  });

  FineAdjacency adj;
  for (std::size_t i = 0; i < fe.size();) {
    FineFace f;
    f.nodes = fe[i].key;
    std::size_t j = i;
    for (; j < fe.size() && fe[j].key == fe[i].key; ++j) {
      if (f.owner_count < 2) f.owners[f.owner_count] = fe[j].tet;
      ++f.owner_count;
    }
    adj.faces.push_back(f);
    i = j;
  }
  for (std::size_t i = 0; i < ee.size();) {
    FineEdge ed;
    ed.nodes = ee[i].key;
    std::size_t j = i;
    for (; j < ee.size() && ee[j].key == ee[i].key; ++j) ed.owners.push_back(ee[j].tet);
    adj.edges.push_back(std::move(ed));
    i = j;
  }
  return adj;
}

NodeStar build_node_star(const TetMesh& mesh) {
  NodeStar star;
  star.offsets.assign(mesh.nodes.size() + 1, 0);
  for (const auto& t : mesh.tets)
    for (int v : t) ++star.offsets[v + 1];
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) star.offsets[i + 1] += star.offsets[i];
  star.tets.resize(star.offsets.back());
  std::vector<int> fill(star.offsets.begin(), star.offsets.end() - 1);
  for (int e = 0; e < static_cast<int>(mesh.tets.size()); ++e)
    for (int v : mesh.tets[e]) star.tets[fill[v]++] = e;
  return star;
}

void write_mesh(const TetMesh& mesh, std::ostream& os) {
  os.precision(17);
  for (const auto& x : mesh.nodes) os << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
  for (const auto& t : mesh.tets) os << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
}

}  // namespace adaschwarz
