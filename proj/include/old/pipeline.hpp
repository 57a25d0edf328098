#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace old {

struct EmbeddingSettings {
  std::vector<std::string> methods = {"deepwalk"};  // deepwalk | node2vec | asne-lite
  int dim = 64;
  int deepwalk_dim = 0;  // 0: inherit dim
  int node2vec_dim = 0;  // 0: inherit dim
  int walk_length = 80;
  int num_walks = 10;
  int window = 10;
  double p = 0.25;
  double q = 4.0;
  int negatives = 5;
  int epochs = 5;
  double lr = 0.025;
  std::string direction = "out";  // out | undirected
  int asne_d_struct = 20;
  int asne_d_attr = 40;
  int asne_epochs = 20;
  int asne_batch = 128;
  int asne_negatives = 5;
  double asne_lr = 0.001;
};

struct RankingSettings {
  std::vector<std::string> methods = {"nlcrank", "asnerank", "leaderrank"};
  double damping = 0.85;
  double tolerance = 1e-10;
  int max_iter = 1000;
  bool cosine = false;
  int top_n = 100;
};

struct SirSettings {
  double tau = 0.015;
  double gamma = 1.0;
  int repetitions = 50;
  int seeds = 100;                     // seeds per ranking (its top-n)
  std::string direction = "influence";  // influence | undirected
};

struct CombineSettings {
  int n = 15;
  int ratio_asnerank = 1;
  int ratio_nlcrank = 2;
  double outlier_percentile = 10.0;
};

struct PipelineConfig {
  // exactly one of edges / snapshots
  std::string edges_path;
  std::string attributes_path;  // optional, single-graph mode
  std::string snapshots_path;
  EmbeddingSettings embedding;
  RankingSettings ranking;
  SirSettings sir;
  CombineSettings combine;
  std::uint64_t seed = 42;
  std::string out_dir = "out";
  int threads = 1;
  bool force = false;

  // canonical parameter dump; excludes out_dir/threads/force so runs into
  // different directories echo identically
  std::string echo() const;
};

struct CliOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<std::string> preset;
  bool force = false;
};

// INI-style config: [section] headers, key = value lines, # / ; comments.
// Layering: built-in defaults, then the named preset (twitter-style /
// twitch-style), then the file, then CLI overrides. Unknown keys are errors.
PipelineConfig load_pipeline_config(const std::string& path, const CliOverrides& overrides = {});

// Resolves an input path: as given if it exists, else under $OLD_DATA_DIR.
std::string resolve_data_path(const std::string& path);

void stage_ingest(const PipelineConfig& cfg);
void stage_embed(const PipelineConfig& cfg);
void stage_rank(const PipelineConfig& cfg);
void stage_sir(const PipelineConfig& cfg);
void stage_combine(const PipelineConfig& cfg);
void stage_report(const PipelineConfig& cfg);

// Text rendering of report.json for terminal output; not an artifact.
std::string render_report_summary(const PipelineConfig& cfg);

}  // namespace old
