#include "adaschwarz/coarse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace adaschwarz {

const char* to_string(CoarseKind kind) {
  return kind == CoarseKind::Wirebasket ? "wirebasket" : "vertex";
}

CoarseKind coarse_kind_from_string(const std::string& s) {
  if (s == "wirebasket") return CoarseKind::Wirebasket;
  if (s == "vertex") return CoarseKind::Vertex;
  throw std::invalid_argument("unknown coarse space '" + s + "' (expected wirebasket or vertex)");
}

const char* to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::Face: return "face";
    case StructureKind::FaceInterior: return "face_interior";
    case StructureKind::Edge: return "edge";
  }
  return "?";
}

int CoarseSpace::count(ColumnTag::Source source) const {
  return static_cast<int>(std::count_if(provenance.begin(), provenance.end(),
                                        [&](const ColumnTag& t) { return t.source == source; }));
}

namespace {

Eigen::VectorXd gather(const Eigen::VectorXd& nodal, const std::vector<int>& nodes) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) v[static_cast<Eigen::Index>(i)] = nodal[nodes[i]];
  return v;
}

int structure_key(ColumnTag::Source s) {
  switch (s) {
    case ColumnTag::Source::FaceEigen: return static_cast<int>(StructureKind::Face);
    case ColumnTag::Source::FaceInteriorEigen: return static_cast<int>(StructureKind::FaceInterior);
    case ColumnTag::Source::EdgeEigen: return static_cast<int>(StructureKind::Edge);
    default: return -1;
  }
}

}  // namespace

Eigen::VectorXd CoarseSpace::interpolation_coefficients(const Eigen::VectorXd& u) const {
  if (u.size() != columns.rows())
    throw std::invalid_argument("interpolation_coefficients: vector has wrong size");
  Eigen::VectorXd nodal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dof_of_node_.size()));
  for (std::size_t x = 0; x < dof_of_node_.size(); ++x)
    if (dof_of_node_[x] >= 0) nodal[static_cast<Eigen::Index>(x)] = u[dof_of_node_[x]];

  // projections are shared by all columns of a structure
  std::map<std::pair<int, int>, Eigen::VectorXd> projected;
  Eigen::VectorXd c(dim());
  for (int j = 0; j < dim(); ++j) {
    const ColumnTag& tag = provenance[j];
    if (tag.source == ColumnTag::Source::Interpolant) {
      c[j] = nodal[tag.structure];
      continue;
    }
    const std::pair<int, int> key{structure_key(tag.source), tag.structure};
    auto it = projected.find(key);
    if (it == projected.end()) {
      const StructureData& d = structures_.at(key);
      Eigen::VectorXd r = gather(nodal, d.nodes);
      // the vertex space projects u itself on faces
      if (tag.source != ColumnTag::Source::FaceInteriorEigen)
        r -= d.extension * gather(nodal, d.boundary_nodes);
      it = projected.emplace(key, d.selected.transpose() * d.b_diag.cwiseProduct(r)).first;
    }
    c[j] = it->second[tag.index];
  }
  return c;
}

Eigen::VectorXd CoarseSpace::interpolate(const Eigen::VectorXd& u) const {
  return columns * interpolation_coefficients(u);
}

CoarseBuilder::CoarseBuilder(const TetMesh& mesh, const CoefficientField& field,
                             const SparseMatrix& A_full, const AssembledSystem& system,
                             const Decomposition& dec)
    : mesh_(mesh),
      field_(field),
      system_(system),
      dec_(dec),
      extender_(mesh, A_full, dec),
      node_weight_(node_weights(mesh, field)),
      face_forms_(dec.faces.size()),
      edge_forms_(dec.edges.size()),
      face_ext_(dec.faces.size()),
      edge_ext_(dec.edges.size()),
      faces_bounded_by_(mesh.nodes.size()),
      edges_ended_by_(mesh.nodes.size()) {
  for (int f = 0; f < static_cast<int>(dec.faces.size()); ++f) {
    const auto& bn = dec.faces[f].boundary_nodes;
    for (int i = 0; i < static_cast<int>(bn.size()); ++i)
      if (dec.on_interface(bn[i])) faces_bounded_by_[bn[i]].emplace_back(f, i);
  }
  for (int e = 0; e < static_cast<int>(dec.edges.size()); ++e)
    for (int s = 0; s < 2; ++s) {
      const int v = dec.edges[e].end_nodes[s];
      if (dec.on_interface(v)) edges_ended_by_[v].emplace_back(e, s);
    }
}

const FaceForms& CoarseBuilder::face_forms(int face) {
  auto& slot = face_forms_.at(face);
  if (!slot)
    slot = std::make_unique<FaceForms>(
        adaschwarz::face_forms(mesh_, field_, node_weight_, dec_.faces[face], false));
  return *slot;
}

const EdgeForms& CoarseBuilder::edge_forms(int edge) {
  auto& slot = edge_forms_.at(edge);
  if (!slot)
    slot = std::make_unique<EdgeForms>(
        adaschwarz::edge_forms(mesh_, field_, node_weight_, dec_.edges[edge]));
  return *slot;
}

const Eigen::MatrixXd& CoarseBuilder::face_extension(int face) {
  auto& slot = face_ext_.at(face);
  if (!slot) {
    const FaceForms& ff = face_forms(face);
    const Eigen::Index ni = ff.interior_size();
    const Eigen::Index nb = ff.A_face_full.rows() - ni;
    Eigen::LLT<Eigen::MatrixXd> llt(ff.A_face);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("face form of face " + std::to_string(face) + " is not SPD");
    slot = std::make_unique<Eigen::MatrixXd>(-llt.solve(ff.A_face_full.topRightCorner(ni, nb)));
  }
  return *slot;
}

const Eigen::MatrixXd& CoarseBuilder::edge_extension(int edge) {
  auto& slot = edge_ext_.at(edge);
  if (!slot) {
    const EdgeForms& ef = edge_forms(edge);
    const Eigen::Index ni = ef.A_edge.rows();
    if (ni == 0) {
      slot = std::make_unique<Eigen::MatrixXd>(0, 2);
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(ef.A_edge);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("edge form of edge " + std::to_string(edge) + " is not SPD");
      slot = std::make_unique<Eigen::MatrixXd>(-llt.solve(ef.A_edge_full.topRightCorner(ni, 2)));
    }
  }
  return *slot;
}

InterfaceTrace CoarseBuilder::wirebasket_interpolant_trace(int node) {
  if (node < 0 || node >= static_cast<int>(mesh_.nodes.size()) ||
      !std::binary_search(dec_.wirebasket_nodes.begin(), dec_.wirebasket_nodes.end(), node))
    throw std::invalid_argument("node " + std::to_string(node) + " is not a wirebasket node");
  InterfaceTrace t;
  t.nodes.push_back(node);
  t.values.push_back(1.0);
  for (const auto& [f, pos] : faces_bounded_by_[node]) {
    const Eigen::MatrixXd& E = face_extension(f);
    const auto& fn = dec_.faces[f].nodes;
    for (std::size_t i = 0; i < fn.size(); ++i) {
      t.nodes.push_back(fn[i]);
      t.values.push_back(E(static_cast<Eigen::Index>(i), pos));
    }
  }
  return t;
}

InterfaceTrace CoarseBuilder::vertex_interpolant_trace(int vertex_node) {
  if (vertex_node < 0 || vertex_node >= static_cast<int>(mesh_.nodes.size()) ||
      dec_.node_class[vertex_node] != NodeClass::Vertex)
    throw std::invalid_argument("node " + std::to_string(vertex_node) + " is not a subdomain vertex");
  InterfaceTrace t;
  t.nodes.push_back(vertex_node);
  t.values.push_back(1.0);
  for (const auto& [e, s] : edges_ended_by_[vertex_node]) {
    const Eigen::MatrixXd& E = edge_extension(e);
    const auto& en = dec_.edges[e].nodes;
    for (std::size_t i = 0; i < en.size(); ++i) {
      t.nodes.push_back(en[i]);
      t.values.push_back(E(static_cast<Eigen::Index>(i), s));
    }
  }
  return t;
}

Eigen::VectorXd CoarseBuilder::build_wirebasket_interpolant_column(int node) {
  return extender_.extend_interface_function(wirebasket_interpolant_trace(node), system_);
}

Eigen::VectorXd CoarseBuilder::build_vertex_interpolant_column(int vertex_node) {
  return extender_.extend_interface_function(vertex_interpolant_trace(vertex_node), system_);
}

EigenSelection CoarseBuilder::face_selection(int face, double threshold) {
  const FaceForms& ff = face_forms(face);
  return select(solve_gevp(ff.A_face, ff.B_face), threshold, 0);
}

EigenSelection CoarseBuilder::face_interior_selection(int face, double threshold) {
  const FaceForms& ff = face_forms(face);
  if (!ff.has_interior)
    throw std::invalid_argument("face " + std::to_string(face) +
                                " has no interior triangles; the vertex space needs H/h >= 3");
  return select(solve_gevp(ff.A_faceI, ff.B_face, ff.interior_kernel), threshold, 1);
}

EigenSelection CoarseBuilder::edge_selection(int edge, double threshold) {
  const EdgeForms& ef = edge_forms(edge);
  return select(solve_gevp(ef.A_edge, ef.B_edge), threshold, 0);
}

std::vector<InterfaceTrace> CoarseBuilder::enrichment_traces(const EigenSelection& selection,
                                                             StructureKind kind,
                                                             int structure) const {
  const std::vector<int>& nodes =
      kind == StructureKind::Edge ? dec_.edges.at(structure).nodes : dec_.faces.at(structure).nodes;
  if (selection.eigenvectors.rows() != static_cast<Eigen::Index>(nodes.size()))
    throw std::invalid_argument("enrichment_traces: eigenvectors do not match the structure");
  std::vector<InterfaceTrace> traces(selection.count_selected);
  for (int i = 0; i < selection.count_selected; ++i) {
    traces[i].nodes = nodes;
    traces[i].values.assign(selection.eigenvectors.col(i).data(),
                            selection.eigenvectors.col(i).data() + nodes.size());
  }
  return traces;
}

SparseMatrix CoarseBuilder::build_enrichment_columns(const EigenSelection& selection,
                                                     StructureKind kind, int structure) {
  return extender_.extend_many(enrichment_traces(selection, kind, structure), system_);
}

CoarseSpace CoarseBuilder::build(const CoarseOptions& options) {
  CoarseSpace space;
  space.kind = options.kind;
  space.enrichment = options.enrichment;
  space.dof_of_node_ = system_.dof_of_node;

  std::vector<InterfaceTrace> traces;
  using Source = ColumnTag::Source;

  auto add_structure = [&](StructureKind kind, int id, Source source, EigenSelection sel,
                           const std::vector<int>& nodes, const std::vector<int>& bnodes,
                           const Eigen::MatrixXd& ext, const Eigen::VectorXd& b) {
    if (kind == StructureKind::FaceInterior && sel.kernel_dim > 1)
      space.warnings.push_back("face " + std::to_string(id) + ": interior-face kernel has dimension " +
                               std::to_string(sel.kernel_dim));
    auto tr = enrichment_traces(sel, kind, id);
    for (int i = 0; i < sel.count_selected; ++i) {
      space.provenance.push_back({source, id, i});
      traces.push_back(std::move(tr[i]));
    }
    CoarseSpace::StructureData d;
    d.nodes = nodes;
    d.boundary_nodes = bnodes;
    d.extension = ext;
    d.b_diag = b;
    d.selected = sel.selected_vectors();
    space.structures_.emplace(std::make_pair(static_cast<int>(kind), id), std::move(d));
    space.spectra.push_back({kind, id, std::move(sel)});
  };

  const int nf = static_cast<int>(dec_.faces.size());
  const int ne = static_cast<int>(dec_.edges.size());
  if (options.kind == CoarseKind::Wirebasket) {
    for (int w : dec_.wirebasket_nodes) {
      space.provenance.push_back({Source::Interpolant, w, 0});
      traces.push_back(wirebasket_interpolant_trace(w));
    }
    if (options.enrichment)
      for (int f = 0; f < nf; ++f) {
        const SubFace& face = dec_.faces[f];
        add_structure(StructureKind::Face, f, Source::FaceEigen,
                      face_selection(f, options.face_threshold), face.nodes, face.boundary_nodes,
                      face_extension(f), face_forms(f).B_face);
      }
  } else {
    for (int v : dec_.vertices) {
      space.provenance.push_back({Source::Interpolant, v, 0});
      traces.push_back(vertex_interpolant_trace(v));
    }
    if (options.enrichment) {
      for (int f = 0; f < nf; ++f) {
        const SubFace& face = dec_.faces[f];
        add_structure(StructureKind::FaceInterior, f, Source::FaceInteriorEigen,
                      face_interior_selection(f, options.face_interior_threshold), face.nodes, {},
                      Eigen::MatrixXd(), face_forms(f).B_face);
      }
      for (int e = 0; e < ne; ++e) {
        const SubEdge& edge = dec_.edges[e];
        add_structure(StructureKind::Edge, e, Source::EdgeEigen,
                      edge_selection(e, options.edge_threshold), edge.nodes,
                      {edge.end_nodes[0], edge.end_nodes[1]}, edge_extension(e),
                      edge_forms(e).B_edge);
      }
    }
  }
  space.columns = extender_.extend_many(traces, system_);
  return space;
}

CoarseOperator assemble_coarse_operator(const CoarseSpace& basis, const AssembledSystem& system,
                                        const Decomposition& dec) {
  if (basis.dim() == 0) throw std::invalid_argument("assemble_coarse_operator: empty coarse basis");
  if (basis.columns.rows() != system.size())
    throw std::invalid_argument("assemble_coarse_operator: basis does not match the system");
  std::vector<int> gamma;
  for (int d = 0; d < system.size(); ++d)
    if (dec.on_interface(system.node_of_dof[d])) gamma.push_back(d);
  std::vector<int> all(system.size());
  for (int d = 0; d < system.size(); ++d) all[d] = d;

  const SparseMatrix A_gamma = extract_submatrix(system.A, gamma, all);
  const Eigen::MatrixXd AR = Eigen::MatrixXd(A_gamma * basis.columns);
  std::vector<int> gamma_pos(system.size(), -1);
  for (std::size_t i = 0; i < gamma.size(); ++i) gamma_pos[gamma[i]] = static_cast<int>(i);
  Eigen::MatrixXd Rg = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(gamma.size()), basis.dim());
  for (int j = 0; j < basis.dim(); ++j)
    for (SparseMatrix::InnerIterator it(basis.columns, j); it; ++it)
      if (gamma_pos[it.row()] >= 0) Rg(gamma_pos[it.row()], j) = it.value();
  CoarseOperator op;
  op.A0 = Rg.transpose() * AR;
  op.A0 = 0.5 * (op.A0 + op.A0.transpose()).eval();
  op.factor.compute(op.A0);
  if (op.factor.info() != Eigen::Success)
    throw std::runtime_error("coarse matrix is not positive definite: linearly dependent coarse basis");
  return op;
}

}  // namespace adaschwarz
