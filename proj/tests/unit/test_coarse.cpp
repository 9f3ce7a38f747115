#include <doctest.h>

#include <random>

#include "adaschwarz/coarse.hpp"
#include "adaschwarz/problem.hpp"
#include "oracle.hpp"

using namespace adaschwarz;

namespace {

Problem random_problem(int m, int Hh, unsigned seed, double hi = 1e4) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(1.0, hi);
  return make_problem(m, Hh, [&](const TetMesh&, int) { return U(rng); });
}

std::map<int, double> as_map(const InterfaceTrace& t) {
  std::map<int, double> m;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) m[t.nodes[i]] = t.values[i];
  return m;
}

}  // namespace

TEST_CASE("vertex interpolant is linear along edges for unit coefficient") {
  const Problem p = make_problem(2, 6, 1.0, {});
  CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
  const int v = p.dec.vertices.at(0);
  const auto tr = as_map(b.vertex_interpolant_trace(v));
  CHECK(tr.at(v) == 1.0);
  int checked = 0;
  for (const auto& e : p.dec.edges) {
    const int s = e.end_nodes[0] == v ? 0 : (e.end_nodes[1] == v ? 1 : -1);
    if (s < 0) continue;
    const int n = static_cast<int>(e.nodes.size()) + 1;
    for (int i = 0; i < n - 1; ++i) {
      const double t = (i + 1.0) / n;  // distance from end_nodes[0]
      CHECK(tr.at(e.nodes[i]) == doctest::Approx(s == 0 ? 1.0 - t : t).epsilon(1e-12));
      ++checked;
    }
  }
  CHECK(checked == 6 * 5);
}

TEST_CASE("edge interpolant with random coefficient matches the tridiagonal oracle") {
  const Problem p = random_problem(2, 5, 21);
  CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
  const int v = p.dec.vertices.at(0);
  const auto tr = as_map(b.vertex_interpolant_trace(v));
  for (int e = 0; e < static_cast<int>(p.dec.edges.size()); ++e) {
    const SubEdge& edge = p.dec.edges[e];
    const int s = edge.end_nodes[0] == v ? 0 : 1;
    const auto n = static_cast<Eigen::Index>(edge.nodes.size());
    std::vector<double> w;
    for (const auto& seg : edge.segments) w.push_back(edge_segment_weight(p.field, seg));
    REQUIRE(w.size() == edge.nodes.size() + 1);
    Eigen::VectorXd lo(n - 1), di(n), up(n - 1), rhs = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      di[i] = w[i] + w[i + 1];
      if (i + 1 < n) lo[i] = up[i] = -w[i + 1];
    }
    (s == 0 ? rhs[0] : rhs[n - 1]) = s == 0 ? w[0] : w[n];
    const Eigen::VectorXd ref = oracle::tridiagonal_solve(lo, di, up, rhs);
    for (Eigen::Index i = 0; i < n; ++i) CHECK(tr.at(edge.nodes[i]) == doctest::Approx(ref[i]).epsilon(1e-12));
  }
}

TEST_CASE("wirebasket face trace is the 5-point harmonic function for unit coefficient") {
  const Problem p = make_problem(2, 6, 1.0, {});
  CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
  int faces = 0;
  for (int w : {p.dec.vertices[0], p.dec.edges[2].nodes[1]}) {
    const auto tr = as_map(b.wirebasket_interpolant_trace(w));
    for (const auto& face : p.dec.faces) {
      if (std::find(face.boundary_nodes.begin(), face.boundary_nodes.end(), w) == face.boundary_nodes.end())
        continue;
      const int ax = face.normal_axis, t0 = (ax + 1) % 3 < (ax + 2) % 3 ? (ax + 1) % 3 : (ax + 2) % 3,
                t1 = 3 - ax - t0;
      std::array<int, 3> o{1 << 20, 1 << 20, 1 << 20};
      for (int x : face.boundary_nodes)
        for (int a = 0; a < 3; ++a) o[a] = std::min(o[a], p.mesh.lattice(x)[a]);
      const auto lw = p.mesh.lattice(w);
      const Eigen::MatrixXd U = oracle::five_point_dirichlet(
          6, [&](int i, int j) { return (i == lw[t0] - o[t0] && j == lw[t1] - o[t1]) ? 1.0 : 0.0; });
      for (int x : face.nodes) {
        const auto l = p.mesh.lattice(x);
        CHECK(tr.at(x) == doctest::Approx(U(l[t0] - o[t0], l[t1] - o[t1])).epsilon(1e-12));
      }
      ++faces;
    }
  }
  CHECK(faces == 12 + 4);  // every face touches the centre vertex, four touch an edge
}

TEST_CASE("coarse spaces: harmonic columns, projection property, coarse matrix") {
  const Problem p = random_problem(2, 4, 5);
  for (CoarseKind kind : {CoarseKind::Wirebasket, CoarseKind::Vertex}) {
    CAPTURE(to_string(kind));
    CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
    CoarseOptions opt;
    opt.kind = kind;
    opt.face_threshold = opt.face_interior_threshold = opt.edge_threshold = 0.5;
    const CoarseSpace space = b.build(opt);
    CHECK(space.count(ColumnTag::Source::Interpolant) == (kind == CoarseKind::Wirebasket ? 19 : 1));
    if (kind == CoarseKind::Vertex) CHECK(space.count(ColumnTag::Source::FaceInteriorEigen) >= 12);
    const Eigen::MatrixXd R(space.columns);
    const Eigen::MatrixXd A(p.system.A);

    // discrete harmonic: A R vanishes at subdomain-interior DOFs
    const Eigen::MatrixXd AR = A * R;
    for (int d = 0; d < p.system.size(); ++d)
      if (p.dec.node_class[p.system.node_of_dof[d]] == NodeClass::SubdomainInterior)
        CHECK(AR.row(d).cwiseAbs().maxCoeff() < 1e-9 * A.cwiseAbs().maxCoeff());

    // I_0 reproduces its own basis
    for (int j = 0; j < space.dim(); ++j) {
      const Eigen::VectorXd c = space.interpolation_coefficients(R.col(j));
      Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim());
      e[j] = 1.0;
      CHECK((c - e).cwiseAbs().maxCoeff() < 1e-10);
    }

    const CoarseOperator op = assemble_coarse_operator(space, p.system, p.dec);
    const Eigen::MatrixXd ref = oracle::restrict(oracle::dense_stiffness(p.mesh, p.field.alpha), p.system.node_of_dof);
    const Eigen::MatrixXd A0 = R.transpose() * ref * R;
    CHECK((op.A0 - A0).cwiseAbs().maxCoeff() < 1e-10 * A0.cwiseAbs().maxCoeff());
    CHECK((op.A0 - op.A0.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * op.A0.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("selected eigenvectors are b-orthonormal") {
  const Problem p = random_problem(2, 5, 9);
  CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
  for (int f = 0; f < 12; ++f) {
    const EigenSelection s = b.face_selection(f, 1e300);
    const Eigen::MatrixXd V = s.selected_vectors();
    const Eigen::VectorXd B = b.face_forms(f).B_face;
    CHECK((V.transpose() * B.asDiagonal() * V - Eigen::MatrixXd::Identity(V.cols(), V.cols())).cwiseAbs().maxCoeff() < 1e-10);
    const EigenSelection si = b.face_interior_selection(f, 1e-300);
    CHECK(si.count_selected == 1);
    CHECK(si.kernel_dim == 1);
  }
  for (int e = 0; e < 6; ++e) {
    const Eigen::MatrixXd V = b.edge_selection(e, 1e300).selected_vectors();
    const Eigen::VectorXd B = b.edge_forms(e).B_edge;
    CHECK((V.transpose() * B.asDiagonal() * V - Eigen::MatrixXd::Identity(V.cols(), V.cols())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("unit coefficient enrichment keeps only the interior-face floor") {
  const Problem p = make_problem(2, 8, 1.0, {});
  CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
  CoarseOptions opt;
  opt.kind = CoarseKind::Wirebasket;
  opt.face_threshold = 0.6 / 8;
  CHECK(b.build(opt).count(ColumnTag::Source::FaceEigen) == 0);
  opt.kind = CoarseKind::Vertex;
  opt.face_interior_threshold = 0.3 / 8;
  opt.edge_threshold = 1.2096 / 8;
  const CoarseSpace v = b.build(opt);
  CHECK(v.count(ColumnTag::Source::FaceInteriorEigen) == 12);
  CHECK(v.count(ColumnTag::Source::EdgeEigen) == 0);
}

TEST_CASE("vertex space needs interior-face triangles") {
  const Problem p = make_problem(2, 2, 1.0, {});
  CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
  CoarseOptions opt;
  opt.kind = CoarseKind::Vertex;
  CHECK_THROWS_AS(b.build(opt), std::invalid_argument);
  CHECK_THROWS(b.wirebasket_interpolant_trace(p.dec.interior_nodes[0].empty() ? -1 : p.dec.interior_nodes[0][0]));
}
