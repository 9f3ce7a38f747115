#include "adaschwarz/problem.hpp"

#include <stdexcept>

namespace adaschwarz {

namespace {

void finish(Problem& p, double f) {
  p.A_full = assemble_stiffness(p.mesh, p.field);
  p.system = eliminate_dirichlet(p.A_full, assemble_load(p.mesh, f), p.mesh.boundary_nodes);
  p.dec = decompose(p.mesh, p.m_per_axis);
}

void check(int m, int Hh) {
  if (m < 1) throw std::invalid_argument("subdomains_per_axis must be at least 1");
  if (Hh < 1) throw std::invalid_argument("H/h must be at least 1");
}

}  // namespace

Problem make_problem(int m_per_axis, int H_over_h, double background,
                     std::span<const InclusionSpec> inclusions, double f) {
  check(m_per_axis, H_over_h);
  Problem p;
  p.m_per_axis = m_per_axis;
  p.H_over_h = H_over_h;
  p.mesh = build_cube_mesh(m_per_axis * H_over_h);
  p.field = assign(p.mesh, background, inclusions);
  finish(p, f);
  return p;
}

Problem make_problem(int m_per_axis, int H_over_h,
                     const std::function<double(const TetMesh&, int)>& alpha, double f) {
  check(m_per_axis, H_over_h);
  Problem p;
  p.m_per_axis = m_per_axis;
  p.H_over_h = H_over_h;
  p.mesh = build_cube_mesh(m_per_axis * H_over_h);
  p.field = assign(p.mesh, 1.0, {});
  for (int t = 0; t < static_cast<int>(p.mesh.tets.size()); ++t) {
    const double a = alpha(p.mesh, t);
    if (!(a > 0.0)) throw std::invalid_argument("coefficient must be positive");
    p.field.alpha[t] = a;
  }
  finish(p, f);
  return p;
}

}  // namespace adaschwarz
