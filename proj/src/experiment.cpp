#include "adaschwarz/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

#include "adaschwarz/precond.hpp"

namespace adaschwarz {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
T get_or(const YAML::Node& node, const char* key, T fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw std::invalid_argument(std::string("config: key '") + key + "' has the wrong type");
  }
}

std::vector<int> int_list(const YAML::Node& node, const char* key, std::vector<int> fallback) {
  const YAML::Node v = node[key];
  if (!v) return fallback;
  if (v.IsScalar()) return {v.as<int>()};
  if (!v.IsSequence()) throw std::invalid_argument(std::string("config: '") + key + "' must be a list");
  std::vector<int> out;
  for (const auto& x : v) out.push_back(x.as<int>());
  return out;
}

InclusionSpec parse_inclusion(const YAML::Node& n, const std::string& where) {
  InclusionSpec inc;
  inc.kind = get_or<std::string>(n, "kind", "box-channel");
  if (inc.kind != "box-channel")
    throw std::invalid_argument(where + ": unsupported inclusion kind '" + inc.kind + "'");
  const YAML::Node box = n["box"];
  if (!box || !box.IsSequence() || box.size() != 3)
    throw std::invalid_argument(where + ": 'box' must be [[x0,x1],[y0,y1],[z0,z1]]");
  for (int a = 0; a < 3; ++a) {
    if (!box[a].IsSequence() || box[a].size() != 2)
      throw std::invalid_argument(where + ": every box axis needs exactly two bounds");
    inc.bounds.lo[a] = box[a][0].as<double>();
    inc.bounds.hi[a] = box[a][1].as<double>();
  }
  if (!n["value"]) throw std::invalid_argument(where + ": missing 'value'");
  inc.value = n["value"].as<double>();
  return inc;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double json_to_double(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

json double_to_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

std::string structure_label(const Decomposition& dec, StructureKind kind, int id) {
  if (kind == StructureKind::Edge) return "E" + std::to_string(id);
  const SubFace& f = dec.faces[id];
  return "F(" + std::to_string(f.k) + "," + std::to_string(f.l) + ")";
}

}  // namespace

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config: YAML parse error: ") + e.what());
  }
  if (!root.IsMap()) throw std::invalid_argument("config: top level must be a mapping");
  ExperimentConfig c;
  c.name = get_or<std::string>(root, "name", c.name);

  if (const YAML::Node mesh = root["mesh"]) {
    c.subdomains_per_axis = get_or<int>(mesh, "subdomains_per_axis", c.subdomains_per_axis);
    c.H_over_h = int_list(mesh, "H_over_h", c.H_over_h);
    c.no_enrichment_H_over_h = int_list(mesh, "no_enrichment_H_over_h", {c.H_over_h.front()});
  }

  YAML::Node dists = root["distributions"];
  if (!dists && root["coefficient"]) {
    // a single coefficient block is a one-row experiment
    YAML::Node single = YAML::Clone(root["coefficient"]);
    if (!single["name"]) single["name"] = c.name;
    dists = YAML::Node(YAML::NodeType::Sequence);
    dists.push_back(single);
  }
  if (!dists || !dists.IsSequence() || dists.size() == 0)
    throw std::invalid_argument("config: 'distributions' must be a non-empty list (or give one 'coefficient' block)");
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const YAML::Node d = dists[i];
    Distribution dist;
    dist.name = get_or<std::string>(d, "name", "distribution" + std::to_string(i));
    dist.background = get_or<double>(d, "background", 1.0);
    if (const YAML::Node incs = d["inclusions"])
      for (std::size_t k = 0; k < incs.size(); ++k)
        dist.inclusions.push_back(parse_inclusion(
            incs[k], "config: distribution '" + dist.name + "' inclusion " + std::to_string(k)));
    c.distributions.push_back(std::move(dist));
  }

  const std::string coarse = get_or<std::string>(root, "coarse_space", "wirebasket");
  if (coarse == "both")
    c.coarse_spaces = {CoarseKind::Wirebasket, CoarseKind::Vertex};
  else
    c.coarse_spaces = {coarse_kind_from_string(coarse)};

  const std::string enr = get_or<std::string>(root, "enrichment", "both");
  if (enr == "both") c.enrichment = {true, false};
  else if (enr == "on") c.enrichment = {true};
  else if (enr == "off") c.enrichment = {false};
  else throw std::invalid_argument("config: 'enrichment' must be on, off or both");

  if (const YAML::Node t = root["threshold"]) {
    c.threshold.mode = get_or<std::string>(t, "mode", c.threshold.mode);
    c.threshold.face = get_or<double>(t, "face", c.threshold.face);
    c.threshold.face_interior = get_or<double>(t, "face_interior", c.threshold.face_interior);
    c.threshold.edge = get_or<double>(t, "edge", c.threshold.edge);
    if (c.threshold.mode == "c_over_Hh") c.threshold.mode = "constant-c-over-Hh";
    if (t["value"]) {
      if (t["face"] || t["face_interior"] || t["edge"])
        throw std::invalid_argument("config: threshold.value cannot be combined with per-problem values");
      c.threshold.face = c.threshold.face_interior = c.threshold.edge = get_or<double>(t, "value", 0.0);
    }
  }
  if (const YAML::Node s = root["solver"]) {
    c.rel_tol = get_or<double>(s, "rel_tol", c.rel_tol);
    c.max_iter = get_or<int>(s, "max_iter", c.max_iter);
  }
  c.rhs = get_or<double>(root, "rhs", c.rhs);
  if (const YAML::Node o = root["outputs"]) {
    c.output_dir = get_or<std::string>(o, "directory", c.output_dir);
    if (o["formats"]) {
      c.formats.clear();
      for (const auto& f : o["formats"]) c.formats.push_back(f.as<std::string>());
    }
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
  if (c.subdomains_per_axis < 1)
    throw std::invalid_argument("config: mesh.subdomains_per_axis must be >= 1");
  if (c.H_over_h.empty()) throw std::invalid_argument("config: mesh.H_over_h is empty");
  for (const auto* list : {&c.H_over_h, &c.no_enrichment_H_over_h})
    for (int Hh : *list) {
      if (Hh < 2) throw std::invalid_argument("config: H/h must be >= 2, got " + std::to_string(Hh));
      const bool vertex = std::find(c.coarse_spaces.begin(), c.coarse_spaces.end(),
                                    CoarseKind::Vertex) != c.coarse_spaces.end();
      if (vertex && Hh < 3)
        throw std::invalid_argument("config: the vertex coarse space needs H/h >= 3 (got " +
                                    std::to_string(Hh) + "), the interior face problem is empty otherwise");
    }
  if (c.threshold.mode != "constant-c-over-Hh" && c.threshold.mode != "explicit")
    throw std::invalid_argument("config: threshold.mode must be constant-c-over-Hh or explicit");
  if (!(c.threshold.face > 0.0) || !(c.threshold.face_interior > 0.0) || !(c.threshold.edge > 0.0))
    throw std::invalid_argument("config: thresholds must be positive");
  if (!(c.rel_tol > 0.0) || c.rel_tol >= 1.0)
    throw std::invalid_argument("config: solver.rel_tol must lie in (0, 1)");
  if (c.max_iter < 1) throw std::invalid_argument("config: solver.max_iter must be >= 1");
  if (c.distributions.empty()) throw std::invalid_argument("config: no distributions");
  for (const auto& f : c.formats)
    if (f != "csv" && f != "txt" && f != "json")
      throw std::invalid_argument("config: unknown output format '" + f + "'");
  for (const auto& d : c.distributions) {
    if (!(d.background > 0.0))
      throw std::invalid_argument("config: distribution '" + d.name + "' needs a positive background");
    for (const auto& inc : d.inclusions) {
      if (!(inc.value > 0.0))
        throw std::invalid_argument("config: distribution '" + d.name + "' has a non-positive inclusion value");
      for (int a = 0; a < 3; ++a)
        if (!(inc.bounds.lo[a] <= inc.bounds.hi[a]))
          throw std::invalid_argument("config: distribution '" + d.name + "' has an inverted box");
    }
  }
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["subdomains_per_axis"] = c.subdomains_per_axis;
  j["H_over_h"] = c.H_over_h;
  j["no_enrichment_H_over_h"] = c.no_enrichment_H_over_h;
  json dists = json::array();
  for (const auto& d : c.distributions) {
    json jd{{"name", d.name}, {"background", d.background}};
    json incs = json::array();
    for (const auto& inc : d.inclusions)
      incs.push_back({{"kind", inc.kind},
                      {"box", {{inc.bounds.lo[0], inc.bounds.hi[0]},
                               {inc.bounds.lo[1], inc.bounds.hi[1]},
                               {inc.bounds.lo[2], inc.bounds.hi[2]}}},
                      {"value", inc.value}});
    jd["inclusions"] = incs;
    dists.push_back(jd);
  }
  j["distributions"] = dists;
  json kinds = json::array();
  for (auto k : c.coarse_spaces) kinds.push_back(to_string(k));
  j["coarse_spaces"] = kinds;
  j["enrichment"] = c.enrichment;
  j["threshold"] = {{"mode", c.threshold.mode},
                    {"face", c.threshold.face},
                    {"face_interior", c.threshold.face_interior},
                    {"edge", c.threshold.edge}};
  j["solver"] = {{"rel_tol", c.rel_tol}, {"max_iter", c.max_iter}};
  j["rhs"] = c.rhs;
  return j;
}

CoarseOptions coarse_options(const ExperimentConfig& c, CoarseKind kind, bool enrichment,
                             int H_over_h) {
  CoarseOptions o;
  o.kind = kind;
  o.enrichment = enrichment;
  const double scale = c.threshold.mode == "explicit" ? 1.0 : 1.0 / H_over_h;
  o.face_threshold = c.threshold.face * scale;
  o.face_interior_threshold = c.threshold.face_interior * scale;
  o.edge_threshold = c.threshold.edge * scale;
  return o;
}

std::string RunRecord::id() const {
  return distribution + "_" + coarse + (enrichment ? "_enr" : "_noenr") + "_Hh" +
         std::to_string(H_over_h);
}

json to_json(const RunRecord& r) {
  json j;
  j["config"] = r.config;
  j["distribution"] = r.distribution;
  j["coarse"] = r.coarse;
  j["enrichment"] = r.enrichment;
  j["H_over_h"] = r.H_over_h;
  j["subdomains_per_axis"] = r.subdomains_per_axis;
  j["dofs"] = r.dofs;
  j["contrast"] = r.contrast;
  j["coarse_dim"] = r.coarse_dim;
  j["interpolant_columns"] = r.interpolant_columns;
  j["enrichment_columns"] = r.enrichment_columns;
  const SolveReport& s = r.report;
  j["report"] = {{"iterations", s.iterations},
                 {"relative_residual_history", s.relative_residual_history},
                 {"final_relative_residual", s.final_relative_residual},
                 {"cond_estimate", s.cond_estimate},
                 {"lambda_min_est", s.lambda_min_est},
                 {"lambda_max_est", s.lambda_max_est},
                 {"estimate_defined", s.estimate_defined},
                 {"converged", s.converged},
                 {"alphas", s.alphas},
                 {"betas", s.betas}};
  json spectra = json::array();
  for (const auto& sp : r.spectra)
    spectra.push_back({{"kind", sp.kind},
                       {"structure", sp.structure},
                       {"label", sp.label},
                       {"selected", sp.selected},
                       {"first_excluded", double_to_json(sp.first_excluded)},
                       {"threshold", sp.threshold},
                       {"kernel_dim", sp.kernel_dim}});
  j["spectra"] = spectra;
  j["timings"] = r.timings;
  j["warnings"] = r.warnings;
  return j;
}

RunRecord record_from_json(const json& j) {
  RunRecord r;
  r.config = j.at("config");
  r.distribution = j.at("distribution").get<std::string>();
  r.coarse = j.at("coarse").get<std::string>();
  r.enrichment = j.at("enrichment").get<bool>();
  r.H_over_h = j.at("H_over_h").get<int>();
  r.subdomains_per_axis = j.at("subdomains_per_axis").get<int>();
  r.dofs = j.at("dofs").get<int>();
  r.contrast = j.at("contrast").get<double>();
  r.coarse_dim = j.at("coarse_dim").get<int>();
  r.interpolant_columns = j.at("interpolant_columns").get<int>();
  r.enrichment_columns = j.at("enrichment_columns").get<int>();
  const json& s = j.at("report");
  r.report.iterations = s.at("iterations").get<int>();
  r.report.relative_residual_history = s.at("relative_residual_history").get<std::vector<double>>();
  r.report.final_relative_residual = s.at("final_relative_residual").get<double>();
  r.report.cond_estimate = s.at("cond_estimate").get<double>();
  r.report.lambda_min_est = s.at("lambda_min_est").get<double>();
  r.report.lambda_max_est = s.at("lambda_max_est").get<double>();
  r.report.estimate_defined = s.at("estimate_defined").get<bool>();
  r.report.converged = s.at("converged").get<bool>();
  r.report.alphas = s.at("alphas").get<std::vector<double>>();
  r.report.betas = s.at("betas").get<std::vector<double>>();
  for (const auto& sp : j.at("spectra")) {
    SpectrumSummary x;
    x.kind = sp.at("kind").get<std::string>();
    x.structure = sp.at("structure").get<int>();
    x.label = sp.at("label").get<std::string>();
    x.selected = sp.at("selected").get<std::vector<double>>();
    x.first_excluded = json_to_double(sp.at("first_excluded"));
    x.threshold = sp.at("threshold").get<double>();
    x.kernel_dim = sp.at("kernel_dim").get<int>();
    r.spectra.push_back(std::move(x));
  }
  r.timings = j.at("timings").get<std::map<std::string, double>>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

RunRecord run_case(const Problem& problem, const ExperimentConfig& config,
                   const std::string& distribution, CoarseKind kind, bool enrichment,
                   const std::string& emit_dir) {
  RunRecord rec;
  rec.config = to_json(config);
  rec.distribution = distribution;
  rec.coarse = to_string(kind);
  rec.enrichment = enrichment;
  rec.H_over_h = problem.H_over_h;
  rec.subdomains_per_axis = problem.m_per_axis;
  rec.dofs = problem.system.size();
  rec.contrast = problem.field.max() / problem.field.min();

  const CoarseOptions opts = coarse_options(config, kind, enrichment, problem.H_over_h);
  auto t0 = std::chrono::steady_clock::now();
  std::shared_ptr<const CoarseSpace> coarse;
  if (problem.m_per_axis > 1) {
    // the builder's subdomain factorizations are released before the local ones exist
    CoarseBuilder builder(problem.mesh, problem.field, problem.A_full, problem.system, problem.dec);
    coarse = std::make_shared<const CoarseSpace>(builder.build(opts));
  }
  rec.timings["coarse_space"] = seconds_since(t0);

  if (coarse) {
    rec.coarse_dim = coarse->dim();
    rec.interpolant_columns = coarse->count(ColumnTag::Source::Interpolant);
    rec.enrichment_columns = rec.coarse_dim - rec.interpolant_columns;
    rec.warnings = coarse->warnings;
    for (const auto& sp : coarse->spectra) {
      SpectrumSummary s;
      s.kind = to_string(sp.kind);
      s.structure = sp.structure;
      s.label = structure_label(problem.dec, sp.kind, sp.structure);
      const auto& sel = sp.selection;
      s.selected.assign(sel.eigenvalues.data(), sel.eigenvalues.data() + sel.count_selected);
      s.first_excluded = sel.first_excluded;
      s.threshold = sel.threshold;
      s.kernel_dim = sel.kernel_dim;
      rec.spectra.push_back(std::move(s));
    }
  }

  t0 = std::chrono::steady_clock::now();
  const SchwarzPreconditioner M(problem.system, problem.dec, coarse);
  rec.timings["preconditioner_setup"] = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const SolveResult res = pcg_solve(
      problem.system.A, [&](const Eigen::VectorXd& r) { return M.apply(r); }, problem.system.rhs,
      config.rel_tol, config.max_iter);
  rec.timings["solve"] = seconds_since(t0);
  rec.report = res.report;

  if (!emit_dir.empty()) {
    const fs::path dir = fs::path(emit_dir) / rec.id();
    fs::create_directories(dir);
    std::ofstream a(dir / "A.mtx");
    write_matrix_market(problem.system.A, a);
    std::ofstream b(dir / "rhs.mtx");
    write_matrix_market(problem.system.rhs, b);
    std::ofstream x(dir / "solution.mtx");
    write_matrix_market(res.x, x);
    std::ofstream cls(dir / "classification.csv");
    write_classification_csv(problem.dec, cls);
    if (coarse) {
      std::ofstream r0(dir / "coarse_basis.mtx");
      write_matrix_market(coarse->columns, r0, false);
      std::ofstream prov(dir / "coarse_provenance.csv");
      prov << "column,source,structure,index\n";
      static const char* names[] = {"interpolant", "face_eig", "face_interior_eig", "edge_eig"};
      for (int c = 0; c < coarse->dim(); ++c) {
        const ColumnTag& t = coarse->provenance[c];
        prov << c << ',' << names[static_cast<int>(t.source)] << ',' << t.structure << ','
             << t.index << '\n';
      }
    }
  }
  return rec;
}

std::vector<RunRecord> run(const ExperimentConfig& config, std::ostream* log) {
  validate(config);
  const bool csv = std::find(config.formats.begin(), config.formats.end(), "csv") != config.formats.end();
  std::vector<RunRecord> records;
  for (const auto& dist : config.distributions) {
    std::set<int> levels(config.H_over_h.begin(), config.H_over_h.end());
    levels.insert(config.no_enrichment_H_over_h.begin(), config.no_enrichment_H_over_h.end());
    for (int Hh : levels) {
      std::unique_ptr<Problem> problem;
      for (CoarseKind kind : config.coarse_spaces)
        for (bool enr : config.enrichment) {
          const auto& list = enr ? config.H_over_h : config.no_enrichment_H_over_h;
          if (std::find(list.begin(), list.end(), Hh) == list.end()) continue;
          if (!problem) {
            const auto t0 = std::chrono::steady_clock::now();
            problem = std::make_unique<Problem>(make_problem(
                config.subdomains_per_axis, Hh, dist.background, dist.inclusions, config.rhs));
            if (log)
              *log << "[" << dist.name << " H/h=" << Hh << "] problem with "
                   << problem->system.size() << " dofs built in " << fixed(seconds_since(t0), 3)
                   << " s\n";
          }
          const auto t0 = std::chrono::steady_clock::now();
          RunRecord rec = run_case(*problem, config, dist.name, kind, enr,
                                   config.emit_matrices ? (fs::path(config.output_dir) / "matrices").string() : "");
          rec.timings["total"] = seconds_since(t0);
          if (log) {
            *log << "  " << std::left << std::setw(11) << to_string(kind)
                 << (enr ? "enrichment " : "plain      ") << "coarse dim " << std::setw(5)
                 << rec.coarse_dim << " kappa " << std::setw(12) << fixed(rec.report.cond_estimate, 6)
                 << " iterations " << std::setw(5) << rec.report.iterations
                 << (rec.report.converged ? "" : " NOT CONVERGED") << '\n';
            for (const auto& w : rec.warnings) *log << "  warning: " << w << '\n';
          }
          if (csv) {
            const fs::path dir = fs::path(config.output_dir) / "residuals";
            fs::create_directories(dir);
            std::ofstream out(dir / (rec.id() + ".csv"));
            out << "iteration,relative_residual\n" << std::setprecision(17);
            const auto& h = rec.report.relative_residual_history;
            for (std::size_t i = 0; i < h.size(); ++i) out << i << ',' << h[i] << '\n';
          }
          records.push_back(std::move(rec));
        }
    }
  }
  return records;
}

std::string format_cell(const RunRecord& r) {
  std::ostringstream os;
  const double k = r.report.cond_estimate;
  if (k >= 1e4) os << std::scientific << std::setprecision(2) << k;
  else os << std::fixed << std::setprecision(2) << k;
  os << " (" << r.report.iterations << ")";
  if (!r.report.converged) os << '!';
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> emit_tables(const std::vector<RunRecord>& records,
                                     const std::string& directory,
                                     const std::vector<std::string>& formats) {
  if (records.empty()) throw std::invalid_argument("emit_tables: no records");
  const auto has = [&](const char* f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };
  fs::create_directories(directory);
  std::vector<std::string> written;

  std::vector<std::string> coarse_kinds;
  std::vector<std::string> dists;
  for (const auto& r : records) {
    if (std::find(coarse_kinds.begin(), coarse_kinds.end(), r.coarse) == coarse_kinds.end())
      coarse_kinds.push_back(r.coarse);
    if (std::find(dists.begin(), dists.end(), r.distribution) == dists.end())
      dists.push_back(r.distribution);
  }

  for (const auto& kind : coarse_kinds) {
    // columns: plain runs first, then enrichment runs, each by ascending H/h
    std::vector<std::pair<bool, int>> cols;
    for (bool enr : {false, true}) {
      std::set<int> levels;
      for (const auto& r : records)
        if (r.coarse == kind && r.enrichment == enr) levels.insert(r.H_over_h);
      for (int Hh : levels) cols.emplace_back(enr, Hh);
    }
    std::vector<std::string> header{"distribution"};
    for (const auto& [enr, Hh] : cols)
      header.push_back((enr ? "enrichment H/h=" : "no enrichment H/h=") + std::to_string(Hh));
    std::vector<std::vector<std::string>> rows;
    for (const auto& d : dists) {
      std::vector<std::string> row{d};
      bool any = false;
      for (const auto& [enr, Hh] : cols) {
        std::string cell = "-";
        for (const auto& r : records)
          if (r.coarse == kind && r.distribution == d && r.enrichment == enr && r.H_over_h == Hh) {
            cell = format_cell(r);
            any = true;
          }
        row.push_back(cell);
      }
      if (any) rows.push_back(std::move(row));
    }

    const fs::path base = fs::path(directory) / ("table_" + kind);
    if (has("csv")) {
      std::ofstream out(base.string() + ".csv");
      for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << csv_field(header[c]);
      out << "\r\n";
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(row[c]);
        out << "\r\n";
      }
      written.push_back(base.string() + ".csv");
    }
    if (has("txt")) {
      std::vector<std::size_t> width(header.size());
      for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
      }
      std::ofstream out(base.string() + ".txt");
      out << "Condition number estimates and iteration counts (in brackets), " << kind
          << " coarse space\n\n";
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
          out << std::left << std::setw(static_cast<int>(width[c]) + 2) << cells[c];
        out << '\n';
      };
      line(header);
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      out << std::string(total, '-') << '\n';
      for (const auto& row : rows) line(row);
      written.push_back(base.string() + ".txt");
    }
  }

  // eigenvalue listings, one per enriched run
  for (const auto& r : records) {
    if (!r.enrichment || r.spectra.empty()) continue;
    const fs::path base = fs::path(directory) / ("eigenvalues_" + r.id());
    if (has("txt")) {
      std::ofstream out(base.string() + ".txt");
      out << "Selected eigenvalues per structure; the first excluded one is marked with *...*\n"
          << r.coarse << " coarse space, distribution " << r.distribution << ", H/h=" << r.H_over_h
          << "\n\n";
      for (const auto& s : r.spectra) {
        out << std::left << std::setw(14) << s.kind << std::setw(10) << s.label << "threshold "
            << std::setprecision(6) << s.threshold << "  |";
        for (double v : s.selected) out << ' ' << std::setprecision(4) << std::scientific << v;
        out << std::defaultfloat << "  | ";
        if (std::isfinite(s.first_excluded))
          out << '*' << std::setprecision(4) << std::scientific << s.first_excluded << '*'
              << std::defaultfloat;
        else
          out << "(all selected)";
        out << '\n';
      }
      written.push_back(base.string() + ".txt");
    }
    if (has("csv")) {
      std::ofstream out(base.string() + ".csv");
      out << "kind,structure,label,position,eigenvalue,first_excluded\r\n" << std::setprecision(17);
      for (const auto& s : r.spectra) {
        for (std::size_t i = 0; i < s.selected.size(); ++i)
          out << s.kind << ',' << s.structure << ',' << csv_field(s.label) << ',' << i + 1 << ','
              << s.selected[i] << ",0\r\n";
        if (std::isfinite(s.first_excluded))
          out << s.kind << ',' << s.structure << ',' << csv_field(s.label) << ','
              << s.selected.size() + 1 << ',' << s.first_excluded << ",1\r\n";
      }
      written.push_back(base.string() + ".csv");
    }
  }
  return written;
}

}  // namespace adaschwarz
