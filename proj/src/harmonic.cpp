#include "adaschwarz/harmonic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

namespace adaschwarz {

HarmonicExtender::HarmonicExtender(const TetMesh& mesh, const SparseMatrix& A_full,
                                   const Decomposition& dec)
    : dec_(dec) {
  const int N = dec.num_subdomains();
  interior_factor_.reserve(N);
  coupling_.reserve(N);
  for (int k = 0; k < N; ++k) {
    const SparseMatrix A_II = extract_submatrix(A_full, dec.interior_nodes[k], dec.interior_nodes[k]);
    try {
      interior_factor_.emplace_back(A_II);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("HarmonicExtender: interior block of subdomain " +
                               std::to_string(k) + " is singular: " + e.what());
    }
    coupling_.push_back(extract_submatrix(A_full, dec.interior_nodes[k], dec.boundary_nodes[k]));
  }
  subdomains_of_node_.assign(mesh.nodes.size(), {});
  for (int v = 0; v < static_cast<int>(mesh.nodes.size()); ++v)
    if (dec.on_interface(v)) subdomains_of_node_[v] = dec.subdomains_containing(mesh, v);
}

Eigen::VectorXd HarmonicExtender::extend(int k, const Eigen::VectorXd& boundary_values) const {
  if (boundary_values.size() != static_cast<Eigen::Index>(dec_.boundary_nodes.at(k).size()))
    throw std::invalid_argument("HarmonicExtender::extend: boundary data has wrong size");
  const Eigen::VectorXd rhs = -(coupling_[k] * boundary_values);
  return interior_factor_[k].solve(rhs);
}

Eigen::MatrixXd HarmonicExtender::extend(int k, const Eigen::MatrixXd& boundary_values) const {
  if (boundary_values.rows() != static_cast<Eigen::Index>(dec_.boundary_nodes.at(k).size()))
    throw std::invalid_argument("HarmonicExtender::extend: boundary data has wrong size");
  const Eigen::MatrixXd rhs = -(coupling_[k] * boundary_values);
  return interior_factor_[k].solve(rhs);
}

void HarmonicExtender::check_trace(const InterfaceTrace& trace) const {
  if (trace.nodes.size() != trace.values.size())
    throw std::invalid_argument("InterfaceTrace: nodes and values differ in length");
  for (int v : trace.nodes)
    if (v < 0 || static_cast<std::size_t>(v) >= subdomains_of_node_.size() ||
        !dec_.on_interface(v))
      throw std::invalid_argument("extend_interface_function: node " + std::to_string(v) +
                                  " is not an interface node");
}

Eigen::VectorXd HarmonicExtender::extend_interface_function(const InterfaceTrace& trace,
                                                            const AssembledSystem& system) const {
  const SparseMatrix col = extend_many({trace}, system);
  return Eigen::VectorXd(col.col(0));
}

Eigen::VectorXd HarmonicExtender::extend_face_function(int face, const Eigen::VectorXd& values,
                                                       const AssembledSystem& system) const {
  const auto& f = dec_.faces.at(face);
  if (values.size() != static_cast<Eigen::Index>(f.nodes.size()))
    throw std::invalid_argument("extend_face_function: values do not match the face nodes");
  InterfaceTrace t{f.nodes, std::vector<double>(values.data(), values.data() + values.size())};
  return extend_interface_function(t, system);
}

Eigen::VectorXd HarmonicExtender::extend_edge_function(int edge, const Eigen::VectorXd& values,
                                                       const AssembledSystem& system) const {
  const auto& e = dec_.edges.at(edge);
  if (values.size() != static_cast<Eigen::Index>(e.nodes.size()))
    throw std::invalid_argument("extend_edge_function: values do not match the edge nodes");
  InterfaceTrace t{e.nodes, std::vector<double>(values.data(), values.data() + values.size())};
  return extend_interface_function(t, system);
}

SparseMatrix HarmonicExtender::extend_many(const std::vector<InterfaceTrace>& traces,
                                           const AssembledSystem& system) const {
  const int N = dec_.num_subdomains();
  const int ncols = static_cast<int>(traces.size());

  // which subdomains each trace touches
  std::vector<std::vector<int>> touched(ncols);
  std::vector<std::vector<int>> cols_of(N);
  for (int j = 0; j < ncols; ++j) {
    check_trace(traces[j]);
    auto& s = touched[j];
    for (std::size_t i = 0; i < traces[j].nodes.size(); ++i)
      if (traces[j].values[i] != 0.0)
        for (int k : subdomains_of_node_[traces[j].nodes[i]]) s.push_back(k);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int k : s) cols_of[k].push_back(j);
  }

  // batched solves, one per subdomain
  std::vector<Eigen::MatrixXd> interior(N);
  std::vector<std::unordered_map<int, int>> col_pos(N);
  for (int k = 0; k < N; ++k) {
    if (cols_of[k].empty()) continue;
    const auto& bnodes = dec_.boundary_nodes[k];
    std::unordered_map<int, int> bpos;
    bpos.reserve(bnodes.size());
    for (int i = 0; i < static_cast<int>(bnodes.size()); ++i) bpos.emplace(bnodes[i], i);
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bnodes.size()),
                                              static_cast<Eigen::Index>(cols_of[k].size()));
    for (int c = 0; c < static_cast<int>(cols_of[k].size()); ++c) {
      const auto& t = traces[cols_of[k][c]];
      for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto it = bpos.find(t.nodes[i]);
        if (it != bpos.end()) G(it->second, c) = t.values[i];
      }
      col_pos[k].emplace(cols_of[k][c], c);
    }
    interior[k] = extend(k, G);
  }

  std::size_t nnz = 0;
  for (int j = 0; j < ncols; ++j) {
    nnz += traces[j].nodes.size();
    for (int k : touched[j]) nnz += dec_.interior_nodes[k].size();
  }
  SparseMatrix R(system.size(), ncols);
  R.reserve(static_cast<Eigen::Index>(nnz));
  std::vector<std::pair<int, double>> entries;
  for (int j = 0; j < ncols; ++j) {
    entries.clear();
    const auto& t = traces[j];
    for (std::size_t i = 0; i < t.nodes.size(); ++i)
      if (t.values[i] != 0.0) entries.emplace_back(system.dof_of_node[t.nodes[i]], t.values[i]);
    for (int k : touched[j]) {
      const int c = col_pos[k].at(j);
      const auto& inodes = dec_.interior_nodes[k];
      for (std::size_t i = 0; i < inodes.size(); ++i)
        entries.emplace_back(system.dof_of_node[inodes[i]], interior[k](static_cast<Eigen::Index>(i), c));
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    R.startVec(j);
    for (const auto& [row, val] : entries) R.insertBack(row, j) = val;
  }
  R.finalize();
  return R;
}

}  // namespace adaschwarz
