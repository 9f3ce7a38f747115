#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "adaschwarz/mesh.hpp"

namespace adaschwarz {

/// Axis-aligned box [lo, hi] in the unit cube.
struct Box {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};

  bool contains(const Point& x) const {
    for (int a = 0; a < 3; ++a)
      if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
  }
};

/// A high (or low) coefficient region. Only box channels are supported.
struct InclusionSpec {
  std::string kind = "box-channel";
  Box bounds;
  double value = 1.0;
};

/// Piecewise constant coefficient, one value per tet.
struct CoefficientField {
  std::vector<double> alpha;
  double background = 1.0;
  std::vector<InclusionSpec> inclusions;

  double min() const;
  double max() const;
};

/**
 * Assigns alpha per tet: the value of the last inclusion whose box contains
 * the tet barycenter, otherwise the background value.
 */
CoefficientField assign(const TetMesh& mesh, double background,
                        std::span<const InclusionSpec> inclusions);

/// Node weights max{alpha_tau : x vertex of tau} for every node at once.
std::vector<double> node_weights(const TetMesh& mesh, const CoefficientField& field);

/// Same weight for a single node (linear scan over the tets).
double node_weight(const TetMesh& mesh, const CoefficientField& field, int node);

/// max of the two owner coefficients of an interior fine triangle.
double face_triangle_weight(const CoefficientField& field, const FineFace& triangle);

/// max of alpha over every tet containing the fine edge.
double edge_segment_weight(const CoefficientField& field, const FineEdge& segment);

}  // namespace adaschwarz
