#include "adaschwarz/decomp.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace adaschwarz {

namespace {

// Subdomain index ranges along one axis for lattice coordinate c.
std::array<int, 2> axis_range(int c, int s, int m, int n) {
  if (c % s == 0 && c > 0 && c < n) return {c / s - 1, c / s};
  const int q = std::min(c / s, m - 1);
  return {q, q};
}

bool is_cut(int c, int s, int n) { return c % s == 0 && c > 0 && c < n; }

}  // namespace

const char* to_string(NodeClass c) {
  switch (c) {
    case NodeClass::SubdomainInterior: return "interior";
    case NodeClass::Face: return "face";
    case NodeClass::Edge: return "edge";
    case NodeClass::Vertex: return "vertex";
    case NodeClass::DomainBoundary: return "boundary";
  }
  return "?";
}

std::vector<int> Decomposition::subdomains_containing(const TetMesh& mesh, int node) const {
  const auto p = mesh.lattice(node);
  std::array<std::array<int, 2>, 3> r;
  for (int a = 0; a < 3; ++a) r[a] = axis_range(p[a], H_over_h, m_per_axis, n_per_axis);
  std::vector<int> out;
  for (int z = r[2][0]; z <= r[2][1]; ++z)
    for (int y = r[1][0]; y <= r[1][1]; ++y)
      for (int x = r[0][0]; x <= r[0][1]; ++x) out.push_back(subdomain_index(x, y, z));
  return out;
}

Decomposition decompose(const TetMesh& mesh, int m_per_axis) {
  const int n = mesh.n_per_axis;
  if (m_per_axis < 1)
    throw std::invalid_argument("decompose: subdomains_per_axis must be >= 1");
  if (n % m_per_axis != 0)
    throw std::invalid_argument("decompose: mesh subdivisions (" + std::to_string(n) +
                                ") not divisible by subdomains per axis (" +
                                std::to_string(m_per_axis) + ")");
  const int m = m_per_axis;
  const int s = n / m;

  Decomposition dec;
  dec.m_per_axis = m;
  dec.n_per_axis = n;
  dec.H_over_h = s;
  dec.H = 1.0 / m;

  const int N = dec.num_subdomains();
  dec.subdomain_of_tet.resize(mesh.tets.size());
  dec.tets_of_subdomain.assign(N, {});
  for (int e = 0; e < static_cast<int>(mesh.tets.size()); ++e) {
    const auto c = mesh.cell_of_tet(e);
    const int sd = dec.subdomain_index(c[0] / s, c[1] / s, c[2] / s);
    dec.subdomain_of_tet[e] = sd;
    dec.tets_of_subdomain[sd].push_back(e);
  }

  // node classification and per-subdomain node sets
  const int nn = static_cast<int>(mesh.nodes.size());
  dec.node_class.assign(nn, NodeClass::SubdomainInterior);
  dec.node_structure.assign(nn, -1);
  dec.interior_nodes.assign(N, {});
  dec.boundary_nodes.assign(N, {});
  for (int v = 0; v < nn; ++v) {
    const auto p = mesh.lattice(v);
    int cuts = 0;
    for (int a = 0; a < 3; ++a) cuts += is_cut(p[a], s, n) ? 1 : 0;
    if (mesh.on_boundary[v]) {
      dec.node_class[v] = NodeClass::DomainBoundary;
    } else if (cuts == 0) {
      dec.node_class[v] = NodeClass::SubdomainInterior;
      dec.node_structure[v] = dec.subdomain_index(p[0] / s, p[1] / s, p[2] / s);
    } else {
      dec.node_class[v] = cuts == 1 ? NodeClass::Face : cuts == 2 ? NodeClass::Edge
                                                                  : NodeClass::Vertex;
    }
    const auto owners = dec.subdomains_containing(mesh, v);
    if (owners.size() == 1 && !mesh.on_boundary[v]) {
      dec.interior_nodes[owners[0]].push_back(v);
    } else {
      for (int sd : owners) {
        // a dOmega node is on the boundary of every subdomain containing it
        dec.boundary_nodes[sd].push_back(v);
      }
    }
  }

  // faces
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3;
    const int c = (a + 2) % 3;
    for (int p = 1; p < m; ++p)
      for (int vc = 0; vc < m; ++vc)
        for (int ub = 0; ub < m; ++ub) {
          SubFace f;
          f.normal_axis = a;
          f.nodes_per_side = s;
          std::array<int, 3> lo{}, hi{};
          lo[a] = p - 1;
          hi[a] = p;
          lo[b] = hi[b] = ub;
          lo[c] = hi[c] = vc;
          const int sd_hi = dec.subdomain_index(hi[0], hi[1], hi[2]);
          const int sd_lo = dec.subdomain_index(lo[0], lo[1], lo[2]);
          f.k = std::max(sd_hi, sd_lo);
          f.l = std::min(sd_hi, sd_lo);

          auto node_at = [&](int beta, int gamma) {
            std::array<int, 3> q{};
            q[a] = p * s;
            q[b] = ub * s + beta;
            q[c] = vc * s + gamma;
            return mesh.node_index(q[0], q[1], q[2]);
          };
          for (int g = 0; g <= s; ++g)
            for (int bb = 0; bb <= s; ++bb) {
              const bool inner = bb > 0 && bb < s && g > 0 && g < s;
              (inner ? f.nodes : f.boundary_nodes).push_back(node_at(bb, g));
            }
          const int fid = static_cast<int>(dec.faces.size());
          for (int v : f.nodes) dec.node_structure[v] = fid;

          // triangles: tet faces lying in the plane, from the two cell layers
          std::map<std::array<int, 3>, std::vector<int>> tri;
          for (int layer = p * s - 1; layer <= p * s; ++layer)
            for (int g = 0; g < s; ++g)
              for (int bb = 0; bb < s; ++bb) {
                std::array<int, 3> cell{};
                cell[a] = layer;
                cell[b] = ub * s + bb;
                cell[c] = vc * s + g;
                const int cid = cell[0] + n * (cell[1] + n * cell[2]);
                for (int e = 6 * cid; e < 6 * cid + 6; ++e) {
                  const auto& t = mesh.tets[e];
                  std::array<int, 3> on{};
                  int cnt = 0;
                  for (int vtx : t)
                    if (mesh.lattice(vtx)[a] == p * s && cnt < 3) on[cnt++] = vtx;
                  if (cnt == 3) {
                    std::sort(on.begin(), on.end());
                    tri[on].push_back(e);
                  }
                }
              }
          for (auto& [key, owners] : tri) {
            if (owners.size() != 2)
              throw std::logic_error("decompose: interface triangle without two owners");
            FineFace ff;
            ff.nodes = key;
            ff.owner_count = 2;
            const bool first_in_k = dec.subdomain_of_tet[owners[0]] == f.k;
            ff.owners = first_in_k ? std::array<int, 2>{owners[0], owners[1]}
                                   : std::array<int, 2>{owners[1], owners[0]};
            bool touches = false;
            for (int vtx : key) {
              const auto q = mesh.lattice(vtx);
              const int lb = q[b] - ub * s;
              const int lg = q[c] - vc * s;
              if (lb == 0 || lb == s || lg == 0 || lg == s) touches = true;
            }
            f.triangles.push_back(ff);
            f.touches_boundary.push_back(touches ? 1 : 0);
          }
          dec.faces.push_back(std::move(f));
        }
  }

  // edges: cut lines along axis c split at cut levels
  for (int c = 0; c < 3; ++c) {
    const int a = (c + 1) % 3;
    const int b = (c + 2) % 3;
    for (int pb = 1; pb < m; ++pb)
      for (int pa = 1; pa < m; ++pa)
        for (int q = 0; q < m; ++q) {
          SubEdge ed;
          ed.axis = c;
          auto node_at = [&](int t) {
            std::array<int, 3> x{};
            x[a] = pa * s;
            x[b] = pb * s;
            x[c] = t;
            return mesh.node_index(x[0], x[1], x[2]);
          };
          ed.end_nodes = {node_at(q * s), node_at(q * s + s)};
          for (int t = q * s + 1; t < q * s + s; ++t) ed.nodes.push_back(node_at(t));
          for (int sb = pb - 1; sb <= pb; ++sb)
            for (int sa = pa - 1; sa <= pa; ++sa) {
              std::array<int, 3> sd{};
              sd[a] = sa;
              sd[b] = sb;
              sd[c] = q;
              ed.subdomains.push_back(dec.subdomain_index(sd[0], sd[1], sd[2]));
            }
          std::sort(ed.subdomains.begin(), ed.subdomains.end());
          const int eid = static_cast<int>(dec.edges.size());
          for (int v : ed.nodes) dec.node_structure[v] = eid;

          for (int t = q * s; t < q * s + s; ++t) {
            FineEdge fe;
            const int v0 = node_at(t), v1 = node_at(t + 1);
            fe.nodes = {std::min(v0, v1), std::max(v0, v1)};
            for (int cb = pb * s - 1; cb <= pb * s; ++cb)
              for (int ca = pa * s - 1; ca <= pa * s; ++ca) {
                std::array<int, 3> cell{};
                cell[a] = ca;
                cell[b] = cb;
                cell[c] = t;
                const int cid = cell[0] + n * (cell[1] + n * cell[2]);
                for (int e = 6 * cid; e < 6 * cid + 6; ++e) {
                  const auto& tv = mesh.tets[e];
                  const bool has0 = std::find(tv.begin(), tv.end(), v0) != tv.end();
                  const bool has1 = std::find(tv.begin(), tv.end(), v1) != tv.end();
                  if (has0 && has1) fe.owners.push_back(e);
                }
              }
            ed.segments.push_back(std::move(fe));
          }
          dec.edges.push_back(std::move(ed));
        }
  }

  for (int z = 1; z < m; ++z)
    for (int y = 1; y < m; ++y)
      for (int x = 1; x < m; ++x) {
        const int v = mesh.node_index(x * s, y * s, z * s);
        dec.node_structure[v] = static_cast<int>(dec.vertices.size());
        dec.vertices.push_back(v);
      }

  for (const auto& ed : dec.edges)
    dec.wirebasket_nodes.insert(dec.wirebasket_nodes.end(), ed.nodes.begin(), ed.nodes.end());
  dec.wirebasket_nodes.insert(dec.wirebasket_nodes.end(), dec.vertices.begin(),
                              dec.vertices.end());
  std::sort(dec.wirebasket_nodes.begin(), dec.wirebasket_nodes.end());

  dec.overlap_nodes = build_overlap(mesh, dec);
  return dec;
}

std::vector<std::vector<int>> build_overlap(const TetMesh& mesh, const Decomposition& dec) {
  const int s = dec.H_over_h;
  const int n = dec.n_per_axis;
  const int m = dec.m_per_axis;
  const NodeStar star = build_node_star(mesh);
  std::vector<std::vector<int>> out(dec.num_subdomains());

  for (int sz = 0; sz < m; ++sz)
    for (int sy = 0; sy < m; ++sy)
      for (int sx = 0; sx < m; ++sx) {
        const int sd = dec.subdomain_index(sx, sy, sz);
        const std::array<int, 3> lo{sx * s, sy * s, sz * s};
        const std::array<int, 3> hi{lo[0] + s, lo[1] + s, lo[2] + s};
        auto in_closed_box = [&](int v) {
          const auto p = mesh.lattice(v);
          for (int a = 0; a < 3; ++a)
            if (p[a] < lo[a] || p[a] > hi[a]) return false;
          return true;
        };
        auto tet_in_overlap = [&](int e) {
          for (int v : mesh.tets[e])
            if (in_closed_box(v)) return true;
          return false;
        };
        for (int k = std::max(lo[2] - 1, 1); k <= std::min(hi[2] + 1, n - 1); ++k)
          for (int j = std::max(lo[1] - 1, 1); j <= std::min(hi[1] + 1, n - 1); ++j)
            for (int i = std::max(lo[0] - 1, 1); i <= std::min(hi[0] + 1, n - 1); ++i) {
              const int v = mesh.node_index(i, j, k);
              bool inside = true;
              for (const int* t = star.begin(v); t != star.end(v) && inside; ++t)
                inside = tet_in_overlap(*t);
              if (inside) out[sd].push_back(v);
            }
        std::sort(out[sd].begin(), out[sd].end());
      }
  return out;
}

FaceSplit split_face_interior(const SubFace& face) {
  FaceSplit split;
  for (int t = 0; t < static_cast<int>(face.triangles.size()); ++t)
    (face.touches_boundary[t] ? split.boundary_layer : split.interior).push_back(t);
  if (split.interior.empty())
    throw std::invalid_argument(
        "split_face_interior: every face triangle touches the face boundary (H/h = " +
        std::to_string(face.nodes_per_side) + "); the interior face problem needs H/h >= 3");
  return split;
}

void write_classification_csv(const Decomposition& dec, std::ostream& os) {
  os << "node,class,structure\n";
  for (std::size_t v = 0; v < dec.node_class.size(); ++v)
    os << v << ',' << to_string(dec.node_class[v]) << ',' << dec.node_structure[v] << '\n';
}

}  // namespace adaschwarz
