#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "adaschwarz/coarse.hpp"
#include "adaschwarz/coeff.hpp"
#include "adaschwarz/pcg.hpp"
#include "adaschwarz/problem.hpp"

namespace adaschwarz {

struct Distribution {
  std::string name;
  double background = 1.0;
  std::vector<InclusionSpec> inclusions;
};

/**
 * mode "constant-c-over-Hh" (alias "c_over_Hh"): lambda* = c / (H/h);
 * mode "explicit": the values are lambda* itself. A single `value` key sets
 * all three.
 */
struct ThresholdConfig {
  std::string mode = "constant-c-over-Hh";
  double face = 0.6;
  double face_interior = 0.3;
  double edge = 1.2096;
};

struct ExperimentConfig {
  std::string name = "experiment";
  int subdomains_per_axis = 2;
  std::vector<int> H_over_h{8};                // enrichment runs
  std::vector<int> no_enrichment_H_over_h{8};  // runs without enrichment
  std::vector<Distribution> distributions;
  std::vector<CoarseKind> coarse_spaces{CoarseKind::Wirebasket};
  std::vector<bool> enrichment{true, false};
  ThresholdConfig threshold;
  double rel_tol = 1e-6;
  int max_iter = 1000;
  double rhs = 100.0;
  std::string output_dir = "out";
  std::vector<std::string> formats{"csv", "txt", "json"};
  bool emit_matrices = false;
};

ExperimentConfig parse_config(const std::string& yaml_text);
ExperimentConfig load_config(const std::string& path);
/// Throws std::invalid_argument with a message naming the offending key.
void validate(const ExperimentConfig& config);
nlohmann::json to_json(const ExperimentConfig& config);

CoarseOptions coarse_options(const ExperimentConfig& config, CoarseKind kind, bool enrichment,
                             int H_over_h);

struct SpectrumSummary {
  std::string kind;  // face | face_interior | edge
  int structure = -1;
  std::string label;  // e.g. "F(1,0)" or "E(3)"
  std::vector<double> selected;
  double first_excluded = 0.0;  // +inf when every eigenvalue was selected
  double threshold = 0.0;
  int kernel_dim = 0;
};

struct RunRecord {
  nlohmann::json config;
  std::string distribution;
  std::string coarse;
  bool enrichment = false;
  int H_over_h = 0;
  int subdomains_per_axis = 0;
  int dofs = 0;
  double contrast = 1.0;
  int coarse_dim = 0;
  int interpolant_columns = 0;
  int enrichment_columns = 0;
  SolveReport report;
  std::vector<SpectrumSummary> spectra;
  std::map<std::string, double> timings;  // seconds per phase
  std::vector<std::string> warnings;

  std::string id() const;
};

nlohmann::json to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);

/// One solve on an already built problem.
RunRecord run_case(const Problem& problem, const ExperimentConfig& config,
                   const std::string& distribution, CoarseKind kind, bool enrichment,
                   const std::string& emit_dir = "");

/**
 * Every (distribution x H/h x coarse space x enrichment) cell of the config,
 * in that nesting order. Progress goes to `log` when given.
 */
std::vector<RunRecord> run(const ExperimentConfig& config, std::ostream* log = nullptr);

/// Condition/iteration tables and eigenvalue listings; returns the written paths.
std::vector<std::string> emit_tables(const std::vector<RunRecord>& records,
                                     const std::string& directory,
                                     const std::vector<std::string>& formats = {"csv", "txt"});

/// "12.56 (19)"
std::string format_cell(const RunRecord& record);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);

}  // namespace adaschwarz
