#include "adaschwarz/coeff.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace adaschwarz {

double CoefficientField::min() const {
  return alpha.empty() ? background : *std::min_element(alpha.begin(), alpha.end());
}

double CoefficientField::max() const {
  return alpha.empty() ? background : *std::max_element(alpha.begin(), alpha.end());
}

CoefficientField assign(const TetMesh& mesh, double background,
                        std::span<const InclusionSpec> inclusions) {
  if (!(background > 0.0))
    throw std::invalid_argument("assign: background coefficient must be positive, got " +
                                std::to_string(background));
  for (std::size_t i = 0; i < inclusions.size(); ++i) {
    const auto& inc = inclusions[i];
    if (inc.kind != "box-channel")
      throw std::invalid_argument("assign: inclusion " + std::to_string(i) +
                                  " has unsupported kind '" + inc.kind + "'");
    if (!(inc.value > 0.0))
      throw std::invalid_argument("assign: inclusion " + std::to_string(i) +
                                  " must have a positive value");
    for (int a = 0; a < 3; ++a)
      if (!(inc.bounds.lo[a] < inc.bounds.hi[a]))
        throw std::invalid_argument("assign: inclusion " + std::to_string(i) +
                                    " has an empty box");
  }

  CoefficientField field;
  field.background = background;
  field.inclusions.assign(inclusions.begin(), inclusions.end());
  field.alpha.assign(mesh.tets.size(), background);
  for (std::size_t e = 0; e < mesh.tets.size(); ++e) {
    const Point c = mesh.barycenter(static_cast<int>(e));
    for (const auto& inc : inclusions)
      if (inc.bounds.contains(c)) field.alpha[e] = inc.value;
  }
  return field;
}

std::vector<double> node_weights(const TetMesh& mesh, const CoefficientField& field) {
  std::vector<double> w(mesh.nodes.size(), 0.0);
  for (std::size_t e = 0; e < mesh.tets.size(); ++e)
    for (int v : mesh.tets[e]) w[v] = std::max(w[v], field.alpha[e]);
  return w;
}

double node_weight(const TetMesh& mesh, const CoefficientField& field, int node) {
  if (node < 0 || static_cast<std::size_t>(node) >= mesh.nodes.size())
    throw std::out_of_range("node_weight: invalid node " + std::to_string(node));
  double w = 0.0;
  for (std::size_t e = 0; e < mesh.tets.size(); ++e)
    for (int v : mesh.tets[e])
      if (v == node) w = std::max(w, field.alpha[e]);
  return w;
}

double face_triangle_weight(const CoefficientField& field, const FineFace& triangle) {
  if (triangle.owner_count != 2)
    throw std::invalid_argument("face_triangle_weight: triangle has " +
                                std::to_string(triangle.owner_count) +
                                " owners; interface triangles have exactly 2");
  return std::max(field.alpha[triangle.owners[0]], field.alpha[triangle.owners[1]]);
}

double edge_segment_weight(const CoefficientField& field, const FineEdge& segment) {
  if (segment.owners.empty())
    throw std::invalid_argument("edge_segment_weight: segment has no owning tets");
  double w = 0.0;
  for (int t : segment.owners) w = std::max(w, field.alpha[t]);
  return w;
}

}  // namespace adaschwarz
