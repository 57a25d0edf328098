// old: opinion leader detection toolkit.
//
// Pipeline: ingest -> embed -> rank -> sir -> combine -> report. Every stage
// reads/writes content-addressed artifacts under the output directory and
// refuses to overwrite differing files unless --force is given.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "old/errors.hpp"
#include "old/pipeline.hpp"

namespace {

struct Args {
  std::string config;
  old::CliOverrides overrides;
};

int dispatch(const std::string& stage, const Args& args) {
  try {
    old::PipelineConfig cfg = old::load_pipeline_config(args.config, args.overrides);
    if (stage == "ingest") old::stage_ingest(cfg);
    else if (stage == "embed") old::stage_embed(cfg);
    else if (stage == "rank") old::stage_rank(cfg);
    else if (stage == "sir") old::stage_sir(cfg);
    else if (stage == "combine") old::stage_combine(cfg);
    else if (stage == "report") {
      old::stage_report(cfg);
      std::cout << old::render_report_summary(cfg);
    }
    return 0;
  } catch (const old::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const old::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const old::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"old: opinion leader detection in social graphs"};
  app.require_subcommand(1);

  Args args;
  std::uint64_t seed = 0;
  std::string out_dir, preset;
  int threads = 0;
  bool force = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config, "pipeline config file")->required();
    sub->add_option("--seed", seed, "override run.seed");
    sub->add_option("--out", out_dir, "override output directory");
    sub->add_option("--threads", threads, "worker threads (1 = fully deterministic)");
    sub->add_option("--preset", preset, "parameter preset: twitter-style or twitch-style");
    sub->add_flag("--force", force, "overwrite differing artifacts");
  };

  const char* stages[] = {"ingest", "embed", "rank", "sir", "combine", "report"};
  const char* descriptions[] = {
      "load edge lists / attributes and build binary caches",
      "train the configured node embeddings",
      "score nodes with the configured rankers",
      "evaluate ranking seed sets with SIR spreading",
      "merge ranking families into the combined leader set",
      "aggregate all stage outputs into report.json"};
  for (int i = 0; i < 6; ++i) add_common(app.add_subcommand(stages[i], descriptions[i]));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (const char* stage : stages) {
    if (!app.got_subcommand(stage)) continue;
    CLI::App* sub = app.get_subcommand(stage);
    if (sub->count("--seed")) args.overrides.seed = seed;
    if (sub->count("--out")) args.overrides.out_dir = out_dir;
    if (sub->count("--threads")) args.overrides.threads = threads;
    if (sub->count("--preset")) args.overrides.preset = preset;
    args.overrides.force = force;
    return dispatch(stage, args);
  }
  return 1;
}
