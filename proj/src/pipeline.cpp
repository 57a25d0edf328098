#include "old/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "old/analysis.hpp"
#include "old/asne.hpp"
#include "old/attributes.hpp"
#include "old/embedding.hpp"
#include "old/errors.hpp"
#include "old/graph.hpp"
#include "old/kshell.hpp"
#include "old/ranking.hpp"
#include "old/rng.hpp"
#include "old/sgns.hpp"
#include "old/sha256.hpp"
#include "old/sir.hpp"
#include "old/snapshots.hpp"
#include "old/text.hpp"
#include "old/walks.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace old {

namespace {

constexpr const char* kToolVersion = "0.1.0";

// FNV-1a, used to fold method/label tags into derived seeds
std::uint64_t str_key(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string sfx(const std::string& label) { return label.empty() ? "" : "_" + label; }

// ---------------------------------------------------------------------------
// config file

struct IniEntry {
  std::string section, key, value;
  std::size_t line;
};

std::vector<IniEntry> parse_ini(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::vector<IniEntry> entries;
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw ParseError(path + " line " + std::to_string(line_no) + ": unterminated section");
      }
      section = std::string(trim(body.substr(1, body.size() - 2)));
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(path + " line " + std::to_string(line_no) + ": expected key = value");
    }
    entries.push_back({section, std::string(trim(body.substr(0, eq))),
                       std::string(trim(body.substr(eq + 1))), line_no});
  }
  return entries;
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> out;
  for (auto item : split(value, ',')) {
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

bool parse_bool(const std::string& value, const std::string& where) {
  std::string v = to_lower(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(where + ": expected boolean, got '" + value + "'");
}

void apply_entry(PipelineConfig& cfg, const std::string& section, const std::string& key,
                 const std::string& value, const std::string& where) {
  auto as_int = [&] { return static_cast<int>(parse_int(value, where)); };
  auto as_double = [&] { return parse_double(value, where); };

  if (section == "data") {
    if (key == "edges") cfg.edges_path = value;
    else if (key == "attributes") cfg.attributes_path = value;
    else if (key == "snapshots") cfg.snapshots_path = value;
    else throw ValidationError(where + ": unknown key data." + key);
  } else if (section == "embedding") {
    auto& e = cfg.embedding;
    if (key == "methods") e.methods = parse_list(value);
    else if (key == "dim") e.dim = as_int();
    else if (key == "deepwalk_dim") e.deepwalk_dim = as_int();
    else if (key == "node2vec_dim") e.node2vec_dim = as_int();
    else if (key == "walk_length") e.walk_length = as_int();
    else if (key == "num_walks") e.num_walks = as_int();
    else if (key == "window") e.window = as_int();
    else if (key == "p") e.p = as_double();
    else if (key == "q") e.q = as_double();
    else if (key == "negatives") e.negatives = as_int();
    else if (key == "epochs") e.epochs = as_int();
    else if (key == "lr") e.lr = as_double();
    else if (key == "direction") e.direction = value;
    else if (key == "asne_d_struct") e.asne_d_struct = as_int();
    else if (key == "asne_d_attr") e.asne_d_attr = as_int();
    else if (key == "asne_epochs") e.asne_epochs = as_int();
    else if (key == "asne_batch") e.asne_batch = as_int();
    else if (key == "asne_negatives") e.asne_negatives = as_int();
    else if (key == "asne_lr") e.asne_lr = as_double();
    else throw ValidationError(where + ": unknown key embedding." + key);
  } else if (section == "ranking") {
    auto& r = cfg.ranking;
    if (key == "methods") r.methods = parse_list(value);
    else if (key == "damping") r.damping = as_double();
    else if (key == "tolerance") r.tolerance = as_double();
    else if (key == "max_iter") r.max_iter = as_int();
    else if (key == "cosine") r.cosine = parse_bool(value, where);
    else if (key == "top_n") r.top_n = as_int();
    else throw ValidationError(where + ": unknown key ranking." + key);
  } else if (section == "sir") {
    auto& s = cfg.sir;
    if (key == "tau") s.tau = as_double();
    else if (key == "gamma") s.gamma = as_double();
    else if (key == "repetitions") s.repetitions = as_int();
    else if (key == "seeds") s.seeds = as_int();
    else if (key == "direction") s.direction = value;
    else throw ValidationError(where + ": unknown key sir." + key);
  } else if (section == "combine") {
    auto& c = cfg.combine;
    if (key == "n") c.n = as_int();
    else if (key == "ratio") {
      auto parts = split(value, ':');
      if (parts.size() != 2) throw ParseError(where + ": ratio must look like 1:2");
      c.ratio_asnerank = static_cast<int>(parse_int(parts[0], where));
      c.ratio_nlcrank = static_cast<int>(parse_int(parts[1], where));
    } else if (key == "outlier_percentile") c.outlier_percentile = as_double();
    else throw ValidationError(where + ": unknown key combine." + key);
  } else if (section == "run") {
    if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(value, where));
    else if (key == "out") cfg.out_dir = value;
    else if (key == "threads") cfg.threads = as_int();
    else if (key == "preset") {
      // handled before entries are applied
    } else throw ValidationError(where + ": unknown key run." + key);
  } else {
    throw ValidationError(where + ": unknown section [" + section + "]");
  }
}

// the two parameter regimes the defaults were tuned against
void apply_preset(PipelineConfig& cfg, const std::string& name) {
  struct Item {
    const char *section, *key, *value;
  };
  static const std::vector<Item> twitter = {
      {"embedding", "walk_length", "80"}, {"embedding", "num_walks", "10"},
      {"embedding", "window", "10"},      {"embedding", "dim", "64"},
      {"embedding", "node2vec_dim", "128"}, {"embedding", "p", "0.25"},
      {"embedding", "q", "4"},            {"embedding", "asne_d_struct", "20"},
      {"embedding", "asne_d_attr", "40"}, {"embedding", "asne_epochs", "20"},
      {"embedding", "asne_batch", "128"}, {"embedding", "asne_lr", "0.001"},
      {"ranking", "top_n", "100"},        {"sir", "gamma", "1"},
      {"sir", "repetitions", "50"},       {"combine", "n", "15"},
      {"combine", "ratio", "1:2"}};
  static const std::vector<Item> twitch = {
      {"embedding", "walk_length", "40"}, {"embedding", "num_walks", "80"},
      {"embedding", "window", "10"},      {"embedding", "dim", "64"},
      {"embedding", "node2vec_dim", "64"}, {"embedding", "p", "0.25"},
      {"embedding", "q", "4"},            {"embedding", "asne_d_struct", "60"},
      {"embedding", "asne_d_attr", "40"}, {"embedding", "asne_epochs", "30"},
      {"embedding", "asne_batch", "128"}, {"embedding", "asne_lr", "0.001"},
      {"ranking", "top_n", "100"},        {"sir", "tau", "0.015"},
      {"sir", "gamma", "1"},              {"sir", "repetitions", "50"},
      {"combine", "n", "15"},             {"combine", "ratio", "1:2"}};

  const std::vector<Item>* items = nullptr;
  if (name == "twitter-style") items = &twitter;
  else if (name == "twitch-style") items = &twitch;
  else throw ValidationError("unknown preset '" + name + "' (twitter-style, twitch-style)");
  for (const auto& it : *items) {
    apply_entry(cfg, it.section, it.key, it.value, "preset " + name);
  }
}

void validate_config(const PipelineConfig& cfg) {
  if (cfg.edges_path.empty() == cfg.snapshots_path.empty()) {
    throw ValidationError("config must set exactly one of data.edges or data.snapshots");
  }
  if (!cfg.snapshots_path.empty() && !cfg.attributes_path.empty()) {
    throw ValidationError("data.attributes belongs in the snapshot manifest in snapshot mode");
  }
  for (const std::string* path : {&cfg.edges_path, &cfg.attributes_path, &cfg.snapshots_path}) {
    if (!path->empty() && !std::filesystem::exists(resolve_data_path(*path))) {
      throw IoError("input file not found: " + *path);
    }
  }
  const auto& e = cfg.embedding;
  if (e.methods.empty()) throw ValidationError("embedding.methods must not be empty");
  for (const auto& m : e.methods) {
    if (m != "deepwalk" && m != "node2vec" && m != "asne-lite") {
      throw ValidationError("unknown embedding method '" + m + "'");
    }
  }
  if (e.direction != "out" && e.direction != "undirected") {
    throw ValidationError("embedding.direction must be out or undirected");
  }
  if (e.dim < 2 || e.walk_length < 1 || e.num_walks < 1 || e.window < 1 || e.epochs < 1 ||
      e.negatives < 1 || !(e.lr > 0)) {
    throw ValidationError("embedding parameters out of range");
  }
  if (!(e.p > 0) || !(e.q > 0)) throw ValidationError("embedding p and q must be > 0");
  if (e.asne_d_struct < 1 || e.asne_d_attr < 1 || e.asne_epochs < 1 || e.asne_batch < 1 ||
      e.asne_negatives < 1 || !(e.asne_lr > 0)) {
    throw ValidationError("asne parameters out of range");
  }
  const auto& r = cfg.ranking;
  if (r.methods.empty()) throw ValidationError("ranking.methods must not be empty");
  for (const auto& m : r.methods) {
    if (m != "nlcrank" && m != "asnerank" && m != "leaderrank") {
      throw ValidationError("unknown ranking method '" + m + "'");
    }
  }
  if (!(r.damping > 0 && r.damping < 1) || !(r.tolerance > 0) || r.max_iter < 1 || r.top_n < 1) {
    throw ValidationError("ranking parameters out of range");
  }
  const auto& s = cfg.sir;
  if (!(s.tau >= 0 && s.tau <= 1) || !(s.gamma > 0 && s.gamma <= 1) || s.repetitions < 1 ||
      s.seeds < 1) {
    throw ValidationError("sir parameters out of range");
  }
  if (s.direction != "influence" && s.direction != "undirected") {
    throw ValidationError("sir.direction must be influence or undirected");
  }
  const auto& c = cfg.combine;
  if (c.n < 1 || c.ratio_asnerank < 1 || c.ratio_nlcrank < 1 ||
      !(c.outlier_percentile >= 0 && c.outlier_percentile < 100)) {
    throw ValidationError("combine parameters out of range");
  }
}

}  // namespace

std::string PipelineConfig::echo() const {
  std::ostringstream out;
  auto line = [&](const std::string& k, const std::string& v) { out << k << '=' << v << '\n'; };
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += v[i];
    }
    return s;
  };
  line("data.edges", edges_path);
  line("data.attributes", attributes_path);
  line("data.snapshots", snapshots_path);
  line("embedding.methods", join(embedding.methods));
  line("embedding.dim", std::to_string(embedding.dim));
  line("embedding.deepwalk_dim", std::to_string(embedding.deepwalk_dim));
  line("embedding.node2vec_dim", std::to_string(embedding.node2vec_dim));
  line("embedding.walk_length", std::to_string(embedding.walk_length));
  line("embedding.num_walks", std::to_string(embedding.num_walks));
  line("embedding.window", std::to_string(embedding.window));
  line("embedding.p", format_double(embedding.p));
  line("embedding.q", format_double(embedding.q));
  line("embedding.negatives", std::to_string(embedding.negatives));
  line("embedding.epochs", std::to_string(embedding.epochs));
  line("embedding.lr", format_double(embedding.lr));
  line("embedding.direction", embedding.direction);
  line("embedding.asne_d_struct", std::to_string(embedding.asne_d_struct));
  line("embedding.asne_d_attr", std::to_string(embedding.asne_d_attr));
  line("embedding.asne_epochs", std::to_string(embedding.asne_epochs));
  line("embedding.asne_batch", std::to_string(embedding.asne_batch));
  line("embedding.asne_negatives", std::to_string(embedding.asne_negatives));
  line("embedding.asne_lr", format_double(embedding.asne_lr));
  line("ranking.methods", join(ranking.methods));
  line("ranking.damping", format_double(ranking.damping));
  line("ranking.tolerance", format_double(ranking.tolerance));
  line("ranking.max_iter", std::to_string(ranking.max_iter));
  line("ranking.cosine", ranking.cosine ? "true" : "false");
  line("ranking.top_n", std::to_string(ranking.top_n));
  line("sir.tau", format_double(sir.tau));
  line("sir.gamma", format_double(sir.gamma));
  line("sir.repetitions", std::to_string(sir.repetitions));
  line("sir.seeds", std::to_string(sir.seeds));
  line("sir.direction", sir.direction);
  line("combine.n", std::to_string(combine.n));
  line("combine.ratio", std::to_string(combine.ratio_asnerank) + ":" +
                            std::to_string(combine.ratio_nlcrank));
  line("combine.outlier_percentile", format_double(combine.outlier_percentile));
  line("run.seed", std::to_string(seed));
  return out.str();
}

PipelineConfig load_pipeline_config(const std::string& path, const CliOverrides& overrides) {
  auto entries = parse_ini(path);

  PipelineConfig cfg;
  std::string preset;
  for (const auto& e : entries) {
    if (e.section == "run" && e.key == "preset") preset = e.value;
  }
  if (overrides.preset) preset = *overrides.preset;
  if (!preset.empty()) apply_preset(cfg, preset);

  for (const auto& e : entries) {
    apply_entry(cfg, e.section, e.key, e.value, path + " line " + std::to_string(e.line));
  }

  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  if (overrides.threads) cfg.threads = *overrides.threads;
  cfg.force = overrides.force;

  validate_config(cfg);
  return cfg;
}

std::string resolve_data_path(const std::string& path) {
  if (fs::exists(path)) return path;
  if (!fs::path(path).is_absolute()) {
    if (const char* base = std::getenv("OLD_DATA_DIR")) {
      fs::path candidate = fs::path(base) / path;
      if (fs::exists(candidate)) return candidate.string();
    }
  }
  return path;  // callers produce the I/O error with this name
}

namespace {

// ---------------------------------------------------------------------------
// manifest + artifact store

fs::path manifest_path(const PipelineConfig& cfg) {
  return fs::path(cfg.out_dir) / "manifest.json";
}

json load_manifest(const PipelineConfig& cfg) {
  std::ifstream in(manifest_path(cfg));
  if (!in) return json();
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("corrupt manifest " + manifest_path(cfg).string() + ": " + e.what());
  }
  return doc;
}

json require_stage(const PipelineConfig& cfg, const std::string& stage, const char* hint) {
  json manifest = load_manifest(cfg);
  if (!manifest.contains("stages") || !manifest["stages"].contains(stage)) {
    throw IoError("stage '" + stage + "' has not been run in " + cfg.out_dir + "; " + hint);
  }
  return manifest["stages"][stage];
}

class StageRecorder {
 public:
  StageRecorder(const PipelineConfig& cfg, std::string stage)
      : cfg_(cfg), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {
    fs::create_directories(cfg.out_dir);
    json manifest = load_manifest(cfg);
    if (!manifest.is_null() && manifest.contains("config_echo") &&
        manifest["config_echo"].get<std::string>() != cfg.echo() && !cfg.force) {
      throw ValidationError("output dir " + cfg.out_dir +
                            " holds artifacts from a different configuration (--force to rebuild)");
    }
  }

  // digest-checked write; identical content is left untouched
  void write(const std::string& relpath, const std::string& content) {
    fs::path full = fs::path(cfg_.out_dir) / relpath;
    fs::create_directories(full.parent_path());
    std::string digest = Sha256::of_string(content);
    if (fs::exists(full)) {
      std::string existing = Sha256::of_file(full.string());
      if (existing != digest && !cfg_.force) {
        throw ValidationError("artifact " + relpath +
                              " differs from the existing file (--force to overwrite)");
      }
      if (existing == digest) {
        record(relpath, digest, content.size());
        return;
      }
    }
    std::ofstream out(full, std::ios::binary);
    if (!out) throw IoError("cannot write artifact: " + full.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + full.string());
    record(relpath, digest, content.size());
  }

  json& info() { return info_; }

  void finish() {
    auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start_)
                    .count();
    json manifest = load_manifest(cfg_);
    if (manifest.is_null()) manifest = json::object();
    manifest["tool"] = "old";
    manifest["version"] = kToolVersion;
    manifest["seed"] = cfg_.seed;
    manifest["config_echo"] = cfg_.echo();
    if (!manifest.contains("stages")) manifest["stages"] = json::object();
    json entry;
    entry["wall_ms"] = wall;
    entry["outputs"] = outputs_;
    entry["info"] = info_;
    manifest["stages"][stage_] = entry;
    std::ofstream out(manifest_path(cfg_));
    if (!out) throw IoError("cannot write manifest: " + manifest_path(cfg_).string());
    out << manifest.dump(2) << '\n';
  }

 private:
  void record(const std::string& relpath, const std::string& digest, std::size_t bytes) {
    outputs_.push_back({{"path", relpath}, {"sha256", digest}, {"bytes", bytes}});
  }

  const PipelineConfig& cfg_;
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
  json outputs_ = json::array();
  json info_ = json::object();
};

std::vector<std::string> ingested_labels(const PipelineConfig& cfg) {
  json stage = require_stage(cfg, "ingest", "run ingest first");
  std::vector<std::string> labels;
  for (const auto& l : stage["info"]["labels"]) labels.push_back(l.get<std::string>());
  return labels;
}

bool label_has_attributes(const PipelineConfig& cfg, const std::string& label) {
  json stage = require_stage(cfg, "ingest", "run ingest first");
  return stage["info"]["reports"][label.empty() ? "default" : label]["attributes"].is_object();
}

DirectedGraph load_cached_graph(const PipelineConfig& cfg, const std::string& label) {
  fs::path p = fs::path(cfg.out_dir) / ("graph" + sfx(label) + ".olgr");
  if (!fs::exists(p)) throw IoError("missing graph cache " + p.string() + "; run ingest first");
  return load_graph_binary(p.string());
}

AttributeTable load_cached_attributes(const PipelineConfig& cfg, const std::string& label) {
  fs::path p = fs::path(cfg.out_dir) / ("attributes" + sfx(label) + ".olat");
  if (!fs::exists(p)) {
    throw IoError("missing attribute cache " + p.string() + "; run ingest first");
  }
  return load_attributes_binary(p.string());
}

struct RankJob {
  std::string ranker;
  std::string emb_method;  // empty for leaderrank
  std::string name() const { return emb_method.empty() ? ranker : ranker + "_" + emb_method; }
};

std::vector<RankJob> rank_jobs(const PipelineConfig& cfg) {
  std::vector<RankJob> jobs;
  for (const auto& ranker : cfg.ranking.methods) {
    if (ranker == "leaderrank") {
      jobs.push_back({ranker, ""});
    } else {
      for (const auto& m : cfg.embedding.methods) jobs.push_back({ranker, m});
    }
  }
  return jobs;
}

EmbeddingMatrix load_embedding_artifact(const PipelineConfig& cfg, const std::string& method,
                                        const std::string& label, const std::string& ranker) {
  fs::path p = fs::path(cfg.out_dir) / ("emb_" + method + sfx(label) + ".olem");
  if (!fs::exists(p)) {
    throw IoError("missing embedding artifact " + p.string() + " for ranking pair (" + ranker +
                  ", " + method + "); run embed first");
  }
  return read_embedding_binary(p.string());
}

RankingResult load_ranking_artifact(const PipelineConfig& cfg, const DirectedGraph& g,
                                    const std::string& name, const std::string& label) {
  fs::path p = fs::path(cfg.out_dir) / ("rank_" + name + sfx(label) + ".csv");
  if (!fs::exists(p)) {
    throw IoError("missing ranking artifact " + p.string() + "; run rank first");
  }
  std::ifstream in(p);
  if (!in) throw IoError("cannot open ranking artifact: " + p.string());
  return read_ranking_csv(in, g, p.string());
}

std::string attitude_csv_row(const std::string& group, const AttitudeSummary& s) {
  return group + "," + format_double(s.support) + "," + format_double(s.reject) + "," +
         format_double(s.irrelevant) + "\n";
}

}  // namespace

// ---------------------------------------------------------------------------
// stages

void stage_ingest(const PipelineConfig& cfg) {
  StageRecorder rec(cfg, "ingest");
  json reports = json::object();
  std::vector<std::string> labels;

  auto ingest_one = [&](const std::string& label, const DirectedGraph& g,
                        const IngestReport& report, const AttributeTable* attrs,
                        const AttributeLoadReport* attr_report) {
    std::ostringstream graph_bytes(std::ios::binary);
    save_graph_binary(g, graph_bytes);
    rec.write("graph" + sfx(label) + ".olgr", graph_bytes.str());

    json entry = {{"nodes", g.node_count()},
                  {"edges", g.edge_count()},
                  {"lines_read", report.lines_read},
                  {"duplicate_edges_dropped", report.duplicate_edges_dropped},
                  {"self_loops_dropped", report.self_loops_dropped},
                  {"attributes", nullptr}};
    if (attrs) {
      std::ostringstream attr_bytes(std::ios::binary);
      save_attributes_binary(*attrs, attr_bytes);
      rec.write("attributes" + sfx(label) + ".olat", attr_bytes.str());
      entry["attributes"] = {{"dim", attrs->dim()},
                             {"rows_matched", attr_report->rows_matched},
                             {"unknown_ids_skipped", attr_report->unknown_ids_skipped},
                             {"nodes_missing", attr_report->nodes_missing.size()},
                             {"has_attitudes", attrs->any_attitudes()}};
    }
    reports[label.empty() ? "default" : label] = entry;
    labels.push_back(label);
  };

  if (!cfg.snapshots_path.empty()) {
    SnapshotSeries series = load_snapshots(resolve_data_path(cfg.snapshots_path));
    if (series.size() == 0) throw ValidationError("snapshot manifest lists no snapshots");
    for (const auto& snap : series.snapshots()) {
      ingest_one(snap.label, snap.graph, snap.ingest,
                 snap.has_attributes ? &snap.attributes : nullptr,
                 snap.has_attributes ? &snap.attribute_report : nullptr);
    }
  } else {
    IngestReport report;
    DirectedGraph g = load_edge_list_file(resolve_data_path(cfg.edges_path), &report);
    if (!cfg.attributes_path.empty()) {
      AttributeLoadReport attr_report;
      AttributeTable attrs =
          load_attributes_file(resolve_data_path(cfg.attributes_path), g, &attr_report);
      ingest_one("", g, report, &attrs, &attr_report);
    } else {
      ingest_one("", g, report, nullptr, nullptr);
    }
  }

  rec.info()["labels"] = labels;
  rec.info()["reports"] = reports;
  rec.write("ingest_report.json", json({{"reports", reports}}).dump(2) + "\n");
  rec.finish();
}

void stage_embed(const PipelineConfig& cfg) {
  auto labels = ingested_labels(cfg);
  StageRecorder rec(cfg, "embed");
  json info = json::object();

  for (const auto& label : labels) {
    DirectedGraph g = load_cached_graph(cfg, label);
    const auto& e = cfg.embedding;
    for (const auto& method : e.methods) {
      EmbeddingMatrix emb;
      std::uint64_t method_seed =
          derive_seed(cfg.seed, {str_key("embed"), str_key(method), str_key(label)});
      if (method == "deepwalk" || method == "node2vec") {
        WalkConfig wc;
        wc.walk_length = e.walk_length;
        wc.num_walks = e.num_walks;
        wc.window = e.window;
        wc.biased = (method == "node2vec");
        wc.p = e.p;
        wc.q = e.q;
        wc.direction =
            e.direction == "out" ? WalkDirection::OutEdges : WalkDirection::Undirected;
        wc.rng_seed = method_seed;
        WalkCorpus corpus = generate_walks(g, wc, cfg.threads);

        SgnsConfig sc;
        sc.dim = method == "deepwalk" ? (e.deepwalk_dim ? e.deepwalk_dim : e.dim)
                                      : (e.node2vec_dim ? e.node2vec_dim : e.dim);
        sc.window = e.window;
        sc.negatives = e.negatives;
        sc.epochs = e.epochs;
        sc.lr = e.lr;
        sc.rng_seed = method_seed;
        sc.threads = cfg.threads;
        emb = train_sgns(corpus, sc);
      } else {  // asne-lite
        if (!label_has_attributes(cfg, label)) {
          throw ValidationError("asne-lite requires an attribute file" +
                                (label.empty() ? std::string() : " for snapshot " + label));
        }
        AttributeTable attrs = load_cached_attributes(cfg, label);
        AsneConfig ac;
        ac.d_struct = e.asne_d_struct;
        ac.d_attr_emb = e.asne_d_attr;
        ac.epochs = e.asne_epochs;
        ac.batch = e.asne_batch;
        ac.negatives = e.asne_negatives;
        ac.lr = e.asne_lr;
        ac.rng_seed = method_seed;
        emb = train_asne_lite(g, attrs, ac);
      }
      std::ostringstream bytes(std::ios::binary);
      write_embedding_binary(emb, bytes);
      rec.write("emb_" + method + sfx(label) + ".olem", bytes.str());
      info[method + sfx(label)] = {{"dim", emb.dim()}, {"nodes", emb.node_count()}};
    }
  }
  rec.info() = info;
  rec.finish();
}

void stage_rank(const PipelineConfig& cfg) {
  auto labels = ingested_labels(cfg);
  StageRecorder rec(cfg, "rank");

  for (const auto& label : labels) {
    DirectedGraph g = load_cached_graph(cfg, label);
    NodeMetrics metrics;
    bool metrics_ready = false;

    for (const auto& job : rank_jobs(cfg)) {
      RankingResult result;
      if (job.ranker == "leaderrank") {
        result = leader_rank(g, cfg.ranking.tolerance, cfg.ranking.max_iter);
      } else {
        EmbeddingMatrix emb = load_embedding_artifact(cfg, job.emb_method, label, job.ranker);
        if (job.ranker == "nlcrank") {
          if (!metrics_ready) {
            metrics = k_shell(g);
            metrics_ready = true;
          }
          result = nlc_rank(g, emb, metrics, cfg.threads);
          result.method = "nlcrank_" + job.emb_method;
        } else {
          PageRankParams params{cfg.ranking.damping, cfg.ranking.tolerance, cfg.ranking.max_iter,
                                cfg.ranking.cosine};
          result = asne_rank(g, emb, params, cfg.threads);
          result.method = "asnerank_" + job.emb_method;
        }
      }
      if (job.ranker == "leaderrank") result.method = "leaderrank";

      std::ostringstream csv;
      write_ranking_csv(result, g, csv);
      rec.write("rank_" + job.name() + sfx(label) + ".csv", csv.str());

      if (static_cast<std::size_t>(cfg.ranking.top_n) > g.node_count()) {
        throw ValidationError("ranking.top_n=" + std::to_string(cfg.ranking.top_n) +
                              " exceeds node count " + std::to_string(g.node_count()));
      }
      auto top = top_n(result, static_cast<std::size_t>(cfg.ranking.top_n));
      std::ostringstream top_csv;
      top_csv << "rank,external_id,score,method\n";
      for (std::size_t i = 0; i < top.size(); ++i) {
        top_csv << (i + 1) << ',' << g.external_id(top[i]) << ','
                << format_double(result.entries[i].score) << ',' << result.method << '\n';
      }
      rec.write("top_" + job.name() + sfx(label) + ".csv", top_csv.str());
    }
  }
  rec.finish();
}

void stage_sir(const PipelineConfig& cfg) {
  auto labels = ingested_labels(cfg);
  StageRecorder rec(cfg, "sir");
  json info = json::object();

  for (const auto& label : labels) {
    DirectedGraph g = load_cached_graph(cfg, label);
    if (static_cast<std::size_t>(cfg.sir.seeds) > g.node_count()) {
      throw ValidationError("sir.seeds=" + std::to_string(cfg.sir.seeds) +
                            " exceeds node count " + std::to_string(g.node_count()));
    }
    for (const auto& job : rank_jobs(cfg)) {
      RankingResult ranking = load_ranking_artifact(cfg, g, job.name(), label);
      SIRConfig sc;
      sc.tau = cfg.sir.tau;
      sc.gamma = cfg.sir.gamma;
      sc.repetitions = cfg.sir.repetitions;
      sc.direction = cfg.sir.direction == "influence" ? SirDirection::Influence
                                                      : SirDirection::Undirected;
      sc.rng_seed = derive_seed(cfg.seed, {str_key("sir"), str_key(job.name()), str_key(label)});
      for (std::size_t i = 0; i < static_cast<std::size_t>(cfg.sir.seeds); ++i) {
        sc.seeds.push_back(ranking.entries[i].node);
      }
      SIRSummary summary = evaluate_seeds(g, sc, cfg.threads);

      std::ostringstream csv, jsonout;
      write_sir_summary_csv(summary, csv);
      write_sir_summary_json(summary, sc, jsonout);
      rec.write("sir_" + job.name() + sfx(label) + ".csv", csv.str());
      rec.write("sir_" + job.name() + sfx(label) + ".json", jsonout.str());
      info[job.name() + sfx(label)] = {{"mean_final", summary.mean_final},
                                       {"std_final", summary.std_final}};
    }
  }
  rec.info() = info;
  rec.finish();
}

void stage_combine(const PipelineConfig& cfg) {
  auto labels = ingested_labels(cfg);
  bool has_asnerank = false, has_nlcrank = false;
  for (const auto& m : cfg.ranking.methods) {
    has_asnerank |= m == "asnerank";
    has_nlcrank |= m == "nlcrank";
  }
  if (!has_asnerank || !has_nlcrank) {
    throw ValidationError("combine requires both asnerank and nlcrank in ranking.methods");
  }

  StageRecorder rec(cfg, "combine");
  json info = json::object();
  std::vector<TopList> combined_lists;

  for (const auto& label : labels) {
    DirectedGraph g = load_cached_graph(cfg, label);
    std::vector<RankingResult> asne_lists, nlc_lists;
    for (const auto& m : cfg.embedding.methods) {
      // retag with the bare embedding method: provenance tracks which
      // embeddings selected a leader, the ranker is fixed per family
      RankingResult a = load_ranking_artifact(cfg, g, "asnerank_" + m, label);
      a.method = m;
      asne_lists.push_back(std::move(a));
      RankingResult nl = load_ranking_artifact(cfg, g, "nlcrank_" + m, label);
      nl.method = m;
      nlc_lists.push_back(std::move(nl));
    }
    auto keep = outlier_keep_predicate(g, cfg.combine.outlier_percentile);
    auto merged_asne = merge_same_ranker(asne_lists, keep);
    auto merged_nlc = merge_same_ranker(nlc_lists, keep);

    CombineConfig cc;
    cc.n = static_cast<std::size_t>(cfg.combine.n);
    cc.ratio = {cfg.combine.ratio_asnerank, cfg.combine.ratio_nlcrank};
    cc.outlier_percentile = cfg.combine.outlier_percentile;
    CombinedLeaders leaders = combine_leaders(merged_asne, merged_nlc, cc);

    auto provenance = [&](const MergedCandidate& cand) {
      std::string out;
      for (const auto& [method, pos] : cand.positions) {
        if (pos < cc.n) {
          if (!out.empty()) out += '+';
          out += method;
        }
      }
      return out.empty() ? std::string("-") : out;
    };

    std::ostringstream csv;
    csv << "part,rank,external_id,provenance\n";
    std::size_t rank = 1;
    TopList top_list;
    top_list.label = label;
    for (const auto& cand : leaders.asnerank_part) {
      csv << "asnerank," << rank++ << ',' << g.external_id(cand.node) << ',' << provenance(cand)
          << '\n';
      top_list.ids.push_back(g.external_id(cand.node));
    }
    for (const auto& cand : leaders.nlcrank_part) {
      csv << "nlcrank," << rank++ << ',' << g.external_id(cand.node) << ',' << provenance(cand)
          << '\n';
      top_list.ids.push_back(g.external_id(cand.node));
    }
    rec.write("combined" + sfx(label) + ".csv", csv.str());
    combined_lists.push_back(std::move(top_list));

    // attitude summary (Table III layout) when the dataset carries attitudes
    bool attitudes_done = false;
    if (label_has_attributes(cfg, label)) {
      AttributeTable attrs = load_cached_attributes(cfg, label);
      if (attrs.any_attitudes()) {
        auto nodes_of = [](const std::vector<MergedCandidate>& part) {
          std::vector<NodeId> out;
          for (const auto& c : part) out.push_back(c.node);
          return out;
        };
        std::vector<NodeId> asne_nodes = nodes_of(leaders.asnerank_part);
        std::vector<NodeId> nlc_nodes = nodes_of(leaders.nlcrank_part);
        std::vector<NodeId> all_nodes = asne_nodes;
        all_nodes.insert(all_nodes.end(), nlc_nodes.begin(), nlc_nodes.end());
        std::vector<NodeId> overall;
        for (NodeId i = 0; i < g.node_count(); ++i) {
          if (attrs.has_attitude(i)) overall.push_back(i);
        }
        std::ostringstream acsv;
        acsv << "group,support,reject,irrelevant\n";
        acsv << attitude_csv_row("asnerank_part", attitude_summary(asne_nodes, attrs));
        acsv << attitude_csv_row("nlcrank_part", attitude_summary(nlc_nodes, attrs));
        acsv << attitude_csv_row("combined", attitude_summary(all_nodes, attrs));
        acsv << attitude_csv_row("overall", attitude_summary(overall, attrs));
        rec.write("attitudes" + sfx(label) + ".csv", acsv.str());
        attitudes_done = true;
      }
    }
    info[label.empty() ? "default" : label] = {
        {"asnerank_part", leaders.asnerank_part.size()},
        {"nlcrank_part", leaders.nlcrank_part.size()},
        {"attitudes", attitudes_done}};
  }

  if (combined_lists.size() >= 2) {
    PersistenceReport persistence = temporal_overlap(combined_lists);
    json doc;
    doc["k"] = cfg.combine.n;
    doc["adjacent"] = json::array();
    for (const auto& adj : persistence.adjacent) {
      doc["adjacent"].push_back(
          {{"a", adj.label_a}, {"b", adj.label_b}, {"jaccard", adj.jaccard}});
    }
    doc["nodes"] = json::array();
    for (const auto& node : persistence.nodes) {
      json ranks = json::object();
      for (const auto& [lbl, rk] : node.rank_by_label) ranks[lbl] = rk;
      doc["nodes"].push_back(
          {{"id", node.id}, {"appearances", node.appearances}, {"ranks", ranks}});
    }
    rec.write("persistence.json", doc.dump(2) + "\n");
  }
  rec.info()["summary"] = info;
  rec.finish();
}

void stage_report(const PipelineConfig& cfg) {
  json manifest = load_manifest(cfg);
  if (manifest.is_null()) {
    throw IoError("no artifacts in " + cfg.out_dir + "; run the pipeline stages first");
  }

  // every artifact listed in the manifest must exist and match its digest
  for (const auto& [stage, entry] : manifest["stages"].items()) {
    for (const auto& output : entry["outputs"]) {
      std::string rel = output["path"].get<std::string>();
      fs::path full = fs::path(cfg.out_dir) / rel;
      if (!fs::exists(full)) {
        throw IoError("artifact listed in manifest is missing: " + rel + " (stage " + stage + ")");
      }
      if (Sha256::of_file(full.string()) != output["sha256"].get<std::string>()) {
        throw ValidationError("artifact digest mismatch: " + rel + " (stage " + stage + ")");
      }
    }
  }

  StageRecorder rec(cfg, "report");

  json report;
  report["tool"] = "old";
  report["version"] = kToolVersion;
  report["seed"] = cfg.seed;
  report["config_sha256"] = Sha256::of_string(cfg.echo());

  const char* stage_names[] = {"ingest", "embed", "rank", "sir", "combine"};
  json stages = json::object();
  for (const char* name : stage_names) {
    if (manifest["stages"].contains(name)) {
      json entry = json::object();
      entry["outputs"] = manifest["stages"][name]["outputs"];
      entry["info"] = manifest["stages"][name]["info"];
      stages[name] = entry;
    } else {
      stages[name] = nullptr;
    }
  }
  report["stages"] = stages;

  // ranking heads (top 10 rows of each top_*.csv)
  if (manifest["stages"].contains("rank")) {
    json heads = json::object();
    for (const auto& output : manifest["stages"]["rank"]["outputs"]) {
      std::string path = output["path"].get<std::string>();
      if (path.rfind("top_", 0) != 0) continue;
      std::ifstream in(fs::path(cfg.out_dir) / path);
      if (!in) throw IoError("missing artifact listed in manifest: " + path);
      std::string line;
      std::getline(in, line);  // header
      json rows = json::array();
      while (rows.size() < 10 && std::getline(in, line)) {
        auto fields = split(trim(line), ',');
        if (fields.size() != 4) continue;
        rows.push_back({{"rank", std::string(fields[0])},
                        {"id", std::string(fields[1])},
                        {"score", std::string(fields[2])}});
      }
      heads[path.substr(4, path.size() - 8)] = rows;  // strip top_ and .csv
    }
    report["rankings"] = heads;
  } else {
    report["rankings"] = nullptr;
  }

  report["sir"] =
      manifest["stages"].contains("sir") ? manifest["stages"]["sir"]["info"] : json(nullptr);

  if (manifest["stages"].contains("combine")) {
    json combined = json::object();
    for (const auto& output : manifest["stages"]["combine"]["outputs"]) {
      std::string path = output["path"].get<std::string>();
      if (path.rfind("combined", 0) != 0) continue;
      std::ifstream in(fs::path(cfg.out_dir) / path);
      if (!in) throw IoError("missing artifact listed in manifest: " + path);
      std::string line;
      std::getline(in, line);
      json rows = json::array();
      while (std::getline(in, line)) {
        auto fields = split(trim(line), ',');
        if (fields.size() != 4) continue;
        rows.push_back({{"part", std::string(fields[0])},
                        {"rank", std::string(fields[1])},
                        {"id", std::string(fields[2])},
                        {"provenance", std::string(fields[3])}});
      }
      combined[path.substr(0, path.size() - 4)] = rows;
    }
    report["combined"] = combined;
    fs::path persistence = fs::path(cfg.out_dir) / "persistence.json";
    if (fs::exists(persistence)) {
      std::ifstream in(persistence);
      json doc;
      in >> doc;
      report["persistence"] = doc;
    } else {
      report["persistence"] = nullptr;
    }
  } else {
    report["combined"] = nullptr;
    report["persistence"] = nullptr;
  }

  rec.write("report.json", report.dump(2) + "\n");
  rec.finish();
}

std::string render_report_summary(const PipelineConfig& cfg) {
  fs::path path = fs::path(cfg.out_dir) / "report.json";
  std::ifstream in(path);
  if (!in) throw IoError("missing report.json in " + cfg.out_dir + "; run report first");
  json report;
  in >> report;

  std::ostringstream out;
  out << "run " << cfg.out_dir << " (seed " << report["seed"].get<std::uint64_t>() << ")\n";
  for (const char* stage : {"ingest", "embed", "rank", "sir", "combine"}) {
    const auto& entry = report["stages"][stage];
    if (entry.is_null()) {
      out << "  " << stage << ": not run\n";
    } else {
      out << "  " << stage << ": " << entry["outputs"].size() << " artifact(s)\n";
    }
  }
  if (report["rankings"].is_object()) {
    for (const auto& [name, rows] : report["rankings"].items()) {
      out << "  top of " << name << ":";
      std::size_t shown = 0;
      for (const auto& row : rows) {
        if (shown++ == 5) break;
        out << ' ' << row["id"].get<std::string>();
      }
      out << '\n';
    }
  }
  if (report["sir"].is_object()) {
    for (const auto& [name, stats] : report["sir"].items()) {
      out << "  sir " << name << ": mean final " << stats["mean_final"].get<double>()
          << " (std " << stats["std_final"].get<double>() << ")\n";
    }
  }
  if (report["combined"].is_object()) {
    for (const auto& [name, rows] : report["combined"].items()) {
      out << "  " << name << ": " << rows.size() << " leaders\n";
    }
  }
  return out.str();
}

}  // namespace old
