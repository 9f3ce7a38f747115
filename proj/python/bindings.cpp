#include <memory>
#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "adaschwarz/coarse.hpp"
#include "adaschwarz/experiment.hpp"
#include "adaschwarz/pcg.hpp"
#include "adaschwarz/precond.hpp"
#include "adaschwarz/problem.hpp"

namespace py = pybind11;
using namespace adaschwarz;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

InclusionSpec inclusion_from(const py::dict& d) {
  InclusionSpec inc;
  const auto box = d["box"].cast<std::vector<std::vector<double>>>();
  if (box.size() != 3) throw std::invalid_argument("inclusion box must be [[x0,x1],[y0,y1],[z0,z1]]");
  for (int a = 0; a < 3; ++a) {
    if (box[a].size() != 2) throw std::invalid_argument("every box axis needs two bounds");
    inc.bounds.lo[a] = box[a][0];
    inc.bounds.hi[a] = box[a][1];
  }
  inc.value = d["value"].cast<double>();
  return inc;
}

std::shared_ptr<Problem> make(int m, int Hh, double background, const py::list& inclusions,
                              std::optional<Eigen::VectorXd> alpha, double f) {
  if (alpha) {
    const Eigen::VectorXd a = *alpha;
    if (a.size() != 6 * static_cast<Eigen::Index>(m * Hh) * (m * Hh) * (m * Hh))
      throw std::invalid_argument("alpha needs one value per tetrahedron (6 (m H/h)^3)");
    return std::make_shared<Problem>(make_problem(m, Hh, [&](const TetMesh&, int t) { return a[t]; }, f));
  }
  std::vector<InclusionSpec> inc;
  for (const auto& d : inclusions) inc.push_back(inclusion_from(d.cast<py::dict>()));
  return std::make_shared<Problem>(make_problem(m, Hh, background, inc, f));
}

std::shared_ptr<const CoarseSpace> build_coarse(const Problem& p, const std::string& kind, bool enrichment,
                                                double c_face, double c_face_interior, double c_edge) {
  CoarseOptions o;
  o.kind = coarse_kind_from_string(kind);
  o.enrichment = enrichment;
  o.face_threshold = c_face / p.H_over_h;
  o.face_interior_threshold = c_face_interior / p.H_over_h;
  o.edge_threshold = c_edge / p.H_over_h;
  CoarseBuilder b(p.mesh, p.field, p.A_full, p.system, p.dec);
  return std::make_shared<const CoarseSpace>(b.build(o));
}

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["final_relative_residual"] = r.final_relative_residual;
  d["cond_estimate"] = r.cond_estimate;
  d["lambda_min"] = r.lambda_min_est;
  d["lambda_max"] = r.lambda_max_est;
  d["estimate_defined"] = r.estimate_defined;
  d["relative_residual_history"] = r.relative_residual_history;
  return d;
}

// keeps the problem alive for as long as the preconditioner
struct Preconditioner {
  std::shared_ptr<const Problem> problem;
  std::shared_ptr<const CoarseSpace> coarse;
  std::unique_ptr<SchwarzPreconditioner> M;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Additive Schwarz with adaptive coarse spaces for 3D diffusion";

  py::class_<Problem, std::shared_ptr<Problem>>(m, "Problem")
      .def_readonly("subdomains_per_axis", &Problem::m_per_axis)
      .def_readonly("H_over_h", &Problem::H_over_h)
      .def_property_readonly("dofs", [](const Problem& p) { return p.system.size(); })
      .def_property_readonly("num_tets", [](const Problem& p) { return p.mesh.num_tets(); })
      .def_property_readonly("alpha", [](const Problem& p) {
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(p.field.alpha.data(), p.field.alpha.size()));
      })
      .def_property_readonly("rhs", [](const Problem& p) { return p.system.rhs; })
      .def("matvec", [](const Problem& p, const Eigen::VectorXd& u) {
        if (u.size() != p.system.size()) throw std::invalid_argument("vector has wrong size");
        return Eigen::VectorXd(p.system.A * u);
      })
      .def("stiffness", [](const Problem& p) { return p.system.A; }, "sparse stiffness on the free DOFs");

  m.def("make_problem", &make, py::arg("subdomains_per_axis"), py::arg("H_over_h"), py::arg("background") = 1.0,
        py::arg("inclusions") = py::list(), py::arg("alpha") = py::none(), py::arg("f") = 100.0,
        "Unit cube problem; inclusions are dicts {box: [[x0,x1],[y0,y1],[z0,z1]], value: v}, "
        "alpha optionally gives one coefficient per tetrahedron.");

  py::class_<CoarseSpace, std::shared_ptr<CoarseSpace>>(m, "CoarseSpace")
      .def_property_readonly("kind", [](const CoarseSpace& c) { return std::string(to_string(c.kind)); })
      .def_readonly("enrichment", &CoarseSpace::enrichment)
      .def_property_readonly("dim", &CoarseSpace::dim)
      .def_property_readonly("interpolant_columns",
                             [](const CoarseSpace& c) { return c.count(ColumnTag::Source::Interpolant); })
      .def_property_readonly("enrichment_columns",
                             [](const CoarseSpace& c) { return c.dim() - c.count(ColumnTag::Source::Interpolant); })
      .def_readonly("columns", &CoarseSpace::columns)
      .def_readonly("warnings", &CoarseSpace::warnings)
      .def("interpolation_coefficients", &CoarseSpace::interpolation_coefficients)
      .def("interpolate", &CoarseSpace::interpolate);

  m.def("build_coarse", &build_coarse, py::arg("problem"), py::arg("kind") = "wirebasket",
        py::arg("enrichment") = true, py::arg("c_face") = 0.6, py::arg("c_face_interior") = 0.3,
        py::arg("c_edge") = 1.2096, "Coarse space with thresholds c / (H/h).");

  py::class_<Preconditioner>(m, "Preconditioner")
      .def(py::init([](std::shared_ptr<const Problem> p, std::shared_ptr<const CoarseSpace> c) {
             auto pc = std::make_unique<Preconditioner>();
             pc->M = std::make_unique<SchwarzPreconditioner>(p->system, p->dec, c);
             pc->problem = std::move(p);
             pc->coarse = std::move(c);
             return pc;
           }),
           py::arg("problem"), py::arg("coarse") = nullptr)
      .def_property_readonly("num_subdomains", [](const Preconditioner& p) { return p.M->num_subdomains(); })
      .def("apply", [](const Preconditioner& p, const Eigen::VectorXd& r) { return p.M->apply(r); });

  m.def(
      "pcg_solve",
      [](const Problem& p, const Preconditioner* M, std::optional<Eigen::VectorXd> b, double rel_tol,
         int max_iter) {
        const Eigen::VectorXd rhs = b ? *b : p.system.rhs;
        LinearOperator op = [](const Eigen::VectorXd& r) { return r; };
        if (M) op = [M](const Eigen::VectorXd& r) { return M->M->apply(r); };
        SolveResult res;
        {
          py::gil_scoped_release release;
          res = pcg_solve(p.system.A, op, rhs, rel_tol, max_iter);
        }
        return py::make_tuple(res.x, report_dict(res.report));
      },
      py::arg("problem"), py::arg("preconditioner") = nullptr, py::arg("b") = py::none(),
      py::arg("rel_tol") = 1e-6, py::arg("max_iter") = 1000, "Returns (x, report).");

  m.def(
      "run_config",
      [](const std::string& path, std::optional<std::string> out, bool write_tables) {
        ExperimentConfig cfg = load_config(path);
        if (out) cfg.output_dir = *out;
        std::vector<RunRecord> recs;
        {
          py::gil_scoped_release release;
          recs = run(cfg);
          if (write_tables) emit_tables(recs, cfg.output_dir, cfg.formats);
        }
        py::list outl;
        for (const auto& r : recs) outl.append(to_python(to_json(r)));
        return outl;
      },
      py::arg("path"), py::arg("out") = py::none(), py::arg("write_tables") = false,
      "Runs every cell of a YAML experiment config; returns one dict per run.");
}
