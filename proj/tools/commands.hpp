#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coarse/config.hpp"
#include "coarse/generators.hpp"
#include "coarse/graph.hpp"
#include "coarse/pipeline.hpp"

namespace coarse::cli {

inline constexpr const char* kVersion = "0.1.0";

// One experiment, fully resolved. Written back out as the run manifest, which
// is itself a valid config.
struct Experiment {
  std::string kind;  // generate, growth, iso, sep, regmap, embed, pipeline
  std::string name;
  std::uint64_t seed = 1;
  std::string space_name = "main";
  std::optional<SpaceSpec> space;

  std::size_t vertex_budget = kDefaultVertexBudget;
  std::size_t subset_budget = 14;
  std::size_t sep_budget = 20;
  std::uint64_t subgraph_budget = 2'000'000;
  std::uint64_t pair_budget = 400'000'000ULL;

  std::optional<Vertex> root;
  std::optional<Label> root_label;
  unsigned threads = 1;

  int max_radius = 8;  // growth

  std::string iso_method = "exact";  // exact, balls, boxes, sublevel
  std::size_t max_size = 12;
  bool rooted = false;
  bool complement_cap = false;
  std::size_t box_dims = 0;

  std::string sep_strategy = "family_balls";
  std::vector<std::size_t> sizes;  // empty: 1..max_size

  std::string domain_graph, codomain_graph, map_file;  // regmap

  int embed_n = 2, embed_d = 0, embed_radius = 8, embed_width = 1;
  std::optional<int> embed_levels;

  PipelineConfig pipeline;

  std::optional<std::filesystem::path> out;
};

// Relative paths in the config resolve against `base`.
Experiment experiment_from_config(const ConfigDoc& doc, const std::filesystem::path& base);
void write_experiment_config(std::ostream& out, const Experiment& e);

struct Artifact {
  std::string name;
  std::string content;
};

// Runs the experiment and returns its artifacts (without the manifest), sorted by name.
std::vector<Artifact> execute(const Experiment& e);
std::string manifest_text(const Experiment& e, const std::vector<Artifact>& artifacts);

// Creates `dir` (which must be absent or empty) and writes artifacts plus manifest.txt.
void write_run(const std::filesystem::path& dir, const Experiment& e, const std::vector<Artifact>& artifacts);

// Summary of a run directory; throws ParseError when manifest.txt is missing.
std::string render_report(const std::filesystem::path& run_dir);

// Exit statuses: 0 ok, 1 other failure, 2 parse or input error, 3 budget, 4 numeric.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace coarse::cli
