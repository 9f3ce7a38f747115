#pragma once

#include <functional>
#include <span>

#include "adaschwarz/assembly.hpp"
#include "adaschwarz/coeff.hpp"
#include "adaschwarz/decomp.hpp"
#include "adaschwarz/mesh.hpp"

namespace adaschwarz {

/// Everything a solve needs on the unit cube: mesh, coefficient, system, partition.
struct Problem {
  int m_per_axis = 0;
  int H_over_h = 0;
  TetMesh mesh;
  CoefficientField field;
  SparseMatrix A_full;
  AssembledSystem system;
  Decomposition dec;
};

/// m^3 subdomains with H/h fine cells each way; constant source f.
Problem make_problem(int m_per_axis, int H_over_h, double background,
                     std::span<const InclusionSpec> inclusions, double f = 100.0);

/// Same with an arbitrary per-tet coefficient.
Problem make_problem(int m_per_axis, int H_over_h,
                     const std::function<double(const TetMesh&, int)>& alpha, double f = 100.0);

}  // namespace adaschwarz
