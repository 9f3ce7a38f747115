#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "adaschwarz/experiment.hpp"

using namespace adaschwarz;
namespace fs = std::filesystem;

namespace {

const char* kSmall = R"(
name: small
mesh: {subdomains_per_axis: 2, H_over_h: [3], no_enrichment_H_over_h: [3]}
distributions:
  - name: chan
    background: 1
    inclusions:
      - {box: [[0.1, 0.3], [0.2, 0.8], [0.1, 0.3]], value: 1.0e3}
coarse_space: both
enrichment: both
solver: {rel_tol: 1.0e-8, max_iter: 200}
outputs: {formats: [csv, txt, json]}
)";

}  // namespace

TEST_CASE("canned configs load") {
  for (const char* name : {"face_channel", "face_channels_all", "edge_slabs", "edge_slabs_face_channels"}) {
    const ExperimentConfig c = load_config((fs::path(ADASCHWARZ_CONFIG_DIR) / (std::string(name) + ".yaml")).string());
    CHECK(c.name == name);
    CHECK(c.coarse_spaces.size() == 2);
    CHECK(!c.distributions.empty());
  }
}

TEST_CASE("config errors name the key") {
  auto msg = [](const std::string& yaml) {
    try {
      parse_config(yaml);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg("name: x\n").find("distributions") != std::string::npos);
  CHECK(msg(std::string(kSmall) + "threshold: {mode: bogus}\n").find("threshold.mode") != std::string::npos);
  CHECK(msg("mesh: {H_over_h: [2]}\ncoarse_space: vertex\ndistributions: [{name: a}]\n").find("H/h >= 3") !=
        std::string::npos);
  CHECK(msg("distributions: [{name: a, inclusions: [{box: [[0,1],[0,1]], value: 2}]}]\n").find("box") !=
        std::string::npos);
  CHECK(msg("distributions: [{name: a, background: -1}]\n").find("background") != std::string::npos);
  CHECK(msg("enrichment: maybe\ndistributions: [{name: a}]\n").find("enrichment") != std::string::npos);
  CHECK(msg("[1, 2]").find("mapping") != std::string::npos);
}

TEST_CASE("thresholds scale with h/H") {
  const ExperimentConfig c = parse_config(kSmall);
  const CoarseOptions o = coarse_options(c, CoarseKind::Vertex, true, 8);
  CHECK(o.face_threshold == doctest::Approx(0.075));
  CHECK(o.face_interior_threshold == doctest::Approx(0.0375));
  CHECK(o.edge_threshold == doctest::Approx(0.1512));
}

TEST_CASE("small experiment: records, JSON round trip, tables") {
  ExperimentConfig c = parse_config(kSmall);
  const fs::path dir = fs::temp_directory_path() / "adaschwarz_unit_experiment";
  fs::remove_all(dir);
  c.output_dir = dir.string();
  const std::vector<RunRecord> recs = run(c);
  REQUIRE(recs.size() == 4);
  for (const auto& r : recs) {
    CHECK(r.report.converged);
    CHECK(r.report.final_relative_residual <= 1e-8);
    CHECK(r.dofs == 125);
    const RunRecord back = record_from_json(to_json(r));
    CHECK(back.id() == r.id());
    CHECK(back.report.iterations == r.report.iterations);
    CHECK(back.report.cond_estimate == r.report.cond_estimate);
    CHECK(back.coarse_dim == r.coarse_dim);
    CHECK(back.spectra.size() == r.spectra.size());
    CHECK(to_json(back) == to_json(r));
  }
  const auto paths = emit_tables(recs, dir.string(), {"csv", "txt"});
  CHECK(fs::exists(dir / "table_wirebasket.csv"));
  CHECK(fs::exists(dir / "table_vertex.txt"));
  std::ifstream in(dir / "table_wirebasket.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.find("chan") == std::string::npos);
  std::string row;
  std::getline(in, row);
  CHECK(row.find(format_cell(recs[0])) != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("single coefficient block and a shared threshold value") {
  const ExperimentConfig c = parse_config(R"(
name: one
mesh: {subdomains_per_axis: 2, H_over_h: 8}
coefficient: {background: 2}
threshold: {mode: explicit, value: 0.05}
)");
  REQUIRE(c.distributions.size() == 1);
  CHECK(c.distributions[0].name == "one");
  CHECK(c.distributions[0].background == 2.0);
  const CoarseOptions o = coarse_options(c, CoarseKind::Vertex, true, 8);
  CHECK(o.face_threshold == 0.05);
  CHECK(o.edge_threshold == 0.05);
  CHECK(parse_config(std::string(kSmall) + "threshold: {mode: c_over_Hh}\n").threshold.mode == "constant-c-over-Hh");
  CHECK_THROWS(parse_config(std::string(kSmall) + "threshold: {value: 1, face: 2}\n"));
}
