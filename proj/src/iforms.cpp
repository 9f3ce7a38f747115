#include "adaschwarz/iforms.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <Eigen/Geometry>

namespace adaschwarz {

namespace {

// P1 stiffness of a triangle embedded in 3D: K_ab = (e_a . e_b) / (4 area),
// e_a being the edge opposite vertex a.
Eigen::Matrix3d triangle_stiffness(const Point& x0, const Point& x1, const Point& x2) {
  const std::array<Eigen::Vector3d, 3> e = {x2 - x1, x0 - x2, x1 - x0};
  const double area = 0.5 * (x1 - x0).cross(x2 - x0).norm();
  Eigen::Matrix3d K;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) K(a, b) = e[a].dot(e[b]) / (4.0 * area);
  return K;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

FaceForms face_forms(const TetMesh& mesh, const CoefficientField& field,
                     const std::vector<double>& node_weight, const SubFace& face,
                     bool require_interior) {
  const int ni = static_cast<int>(face.nodes.size());
  const int nt = ni + static_cast<int>(face.boundary_nodes.size());
  std::unordered_map<int, int> local;
  local.reserve(nt);
  for (int i = 0; i < ni; ++i) local.emplace(face.nodes[i], i);
  for (int i = 0; i < static_cast<int>(face.boundary_nodes.size()); ++i)
    local.emplace(face.boundary_nodes[i], ni + i);

  FaceForms forms;
  forms.A_face_full = Eigen::MatrixXd::Zero(nt, nt);
  Eigen::MatrixXd AI_full = Eigen::MatrixXd::Zero(nt, nt);
  std::vector<int> parent(ni);
  std::iota(parent.begin(), parent.end(), 0);

  for (std::size_t t = 0; t < face.triangles.size(); ++t) {
    const FineFace& tri = face.triangles[t];
    const double w = face_triangle_weight(field, tri);
    const Eigen::Matrix3d K = triangle_stiffness(
        mesh.nodes[tri.nodes[0]], mesh.nodes[tri.nodes[1]], mesh.nodes[tri.nodes[2]]);
    std::array<int, 3> loc{};
    for (int a = 0; a < 3; ++a) loc[a] = local.at(tri.nodes[a]);
    const bool interior = !face.touches_boundary[t];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        forms.A_face_full(loc[a], loc[b]) += w * K(a, b);
        if (interior) AI_full(loc[a], loc[b]) += w * K(a, b);
      }
    if (interior) {
      forms.has_interior = true;
      for (int a = 1; a < 3; ++a) parent[find_root(parent, loc[a])] = find_root(parent, loc[0]);
    }
  }
  if (require_interior && !forms.has_interior)
    throw std::invalid_argument("face_forms: face (" + std::to_string(face.k) + "," +
                                std::to_string(face.l) +
                                ") has no interior triangles; H/h must be >= 3");

  forms.A_face = forms.A_face_full.topLeftCorner(ni, ni);
  forms.B_face.resize(ni);
  for (int i = 0; i < ni; ++i) forms.B_face[i] = node_weight[face.nodes[i]];

  if (forms.has_interior) {
    forms.A_faceI = AI_full.topLeftCorner(ni, ni);
    std::unordered_map<int, int> component;
    int next = 0;
    for (int i = 0; i < ni; ++i)
      if (component.emplace(find_root(parent, i), next).second) ++next;
    forms.interior_kernel = Eigen::MatrixXd::Zero(ni, next);
    for (int i = 0; i < ni; ++i) forms.interior_kernel(i, component.at(find_root(parent, i))) = 1.0;
  }
  return forms;
}

EdgeForms edge_forms(const TetMesh& mesh, const CoefficientField& field,
                     const std::vector<double>& node_weight, const SubEdge& edge) {
  const int ni = static_cast<int>(edge.nodes.size());
  // chain position -> local index: end0, interior..., end1
  std::vector<int> loc(ni + 2);
  loc[0] = ni;
  for (int i = 0; i < ni; ++i) loc[i + 1] = i;
  loc[ni + 1] = ni + 1;

  if (static_cast<int>(edge.segments.size()) != ni + 1)
    throw std::invalid_argument("edge_forms: segment count does not match edge nodes");
  EdgeForms forms;
  forms.A_edge_full = Eigen::MatrixXd::Zero(ni + 2, ni + 2);
  const double h = mesh.h;
  for (int t = 0; t <= ni; ++t) {
    const double w = edge_segment_weight(field, edge.segments[t]) / h;
    const int a = loc[t], b = loc[t + 1];
    forms.A_edge_full(a, a) += w;
    forms.A_edge_full(b, b) += w;
    forms.A_edge_full(a, b) -= w;
    forms.A_edge_full(b, a) -= w;
  }
  forms.A_edge = forms.A_edge_full.topLeftCorner(ni, ni);
  forms.B_edge.resize(ni);
  for (int i = 0; i < ni; ++i) forms.B_edge[i] = node_weight[edge.nodes[i]] / h;
  return forms;
}

}  // namespace adaschwarz
