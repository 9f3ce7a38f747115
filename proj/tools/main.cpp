// Experiment driver: adaschwarz run <config> [--out DIR] [--coarse ...] [--no-enrichment] [--emit-matrices]
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adaschwarz/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Adaptive coarse space additive Schwarz experiments"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "run every cell of an experiment config");
  std::string config_path, out_dir, coarse;
  bool no_enrichment = false;
  bool emit_matrices = false;
  run->add_option("config", config_path, "YAML experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory (overrides ADASCHWARZ_OUT and the config)");
  run->add_option("--coarse", coarse, "coarse space")->check(CLI::IsMember({"wirebasket", "vertex", "both"}));
  run->add_flag("--no-enrichment", no_enrichment, "only runs without enrichment");
  run->add_flag("--emit-matrices", emit_matrices, "write Matrix Market files per run");
  CLI11_PARSE(app, argc, argv);

  try {
    adaschwarz::ExperimentConfig cfg = adaschwarz::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    else if (const char* env = std::getenv("ADASCHWARZ_OUT"); env && *env) cfg.output_dir = env;
    if (coarse == "both") cfg.coarse_spaces = {adaschwarz::CoarseKind::Wirebasket, adaschwarz::CoarseKind::Vertex};
    else if (!coarse.empty()) cfg.coarse_spaces = {adaschwarz::coarse_kind_from_string(coarse)};
    if (no_enrichment) {
      cfg.enrichment = {false};
      cfg.no_enrichment_H_over_h = cfg.H_over_h;
    }
    cfg.emit_matrices = emit_matrices;
    adaschwarz::validate(cfg);
    std::filesystem::create_directories(cfg.output_dir);

    const auto records = adaschwarz::run(cfg, &std::cout);
    const auto files = adaschwarz::emit_tables(records, cfg.output_dir, cfg.formats);
    if (std::find(cfg.formats.begin(), cfg.formats.end(), "json") != cfg.formats.end()) {
      nlohmann::json all = nlohmann::json::array();
      for (const auto& r : records) all.push_back(adaschwarz::to_json(r));
      std::ofstream(std::filesystem::path(cfg.output_dir) / "records.json") << all.dump(1) << '\n';
    }
    for (const auto& f : files)
      if (f.find("table_") != std::string::npos && f.ends_with(".txt")) {
        std::ifstream in(f);
        std::cout << '\n' << in.rdbuf();
      }
    bool all_converged = true;
    for (const auto& r : records) all_converged = all_converged && r.report.converged;
    std::cout << "\noutputs in " << cfg.output_dir << '\n';
    return all_converged ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
