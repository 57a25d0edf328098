#include "old/sir.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "old/errors.hpp"
#include "old/parallel.hpp"
#include "old/rng.hpp"
#include "old/text.hpp"

namespace old {

namespace {

constexpr std::uint64_t kSirTag = 0x736972;  // "sir"
constexpr std::uint64_t kInfectTag = 1;
constexpr std::uint64_t kRecoverTag = 2;

enum State : std::uint8_t { kSusceptible = 0, kInfected = 1, kRecovered = 2 };

void validate(const DirectedGraph& g, const SIRConfig& cfg) {
  if (cfg.seeds.empty()) throw ValidationError("sir: seed set is empty");
  if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0)) throw ValidationError("sir: tau must be in [0,1]");
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) throw ValidationError("sir: gamma must be in (0,1]");
  if (cfg.repetitions < 1) throw ValidationError("sir: repetitions must be >= 1");
  for (NodeId s : cfg.seeds) g.check_node(s);
}

}  // namespace

namespace detail {

SIRTrace run_sir_rep(const DirectedGraph& g, const SIRConfig& cfg, std::uint64_t repetition) {
  const std::size_t n = g.node_count();
  const std::uint64_t run_key = derive_seed(cfg.rng_seed, {kSirTag, repetition});

  std::vector<std::uint8_t> state(n, kSusceptible);
  std::vector<std::uint32_t> infected_at(n, 0);

  std::vector<NodeId> active;  // infectious nodes, ascending
  for (NodeId s : cfg.seeds) {
    if (state[s] == kSusceptible) {
      state[s] = kInfected;
      active.push_back(s);
    }
  }
  std::sort(active.begin(), active.end());

  std::uint32_t s_count = static_cast<std::uint32_t>(n - active.size());
  std::uint32_t i_count = static_cast<std::uint32_t>(active.size());
  std::uint32_t r_count = 0;

  SIRTrace trace;
  auto record = [&] {
    trace.susceptible.push_back(s_count);
    trace.infected.push_back(i_count);
    trace.recovered.push_back(r_count);
  };
  record();  // step 0

  auto contacts = [&](NodeId u) {
    // influence flows followee -> follower, i.e. along reversed follow edges
    return cfg.direction == SirDirection::Influence ? g.in_neighbors(u)
                                                    : g.undirected_neighbors(u);
  };

  std::vector<NodeId> newly;
  std::uint32_t step = 0;
  while (!active.empty()) {
    ++step;
    newly.clear();

    for (NodeId u : active) {
      // attempt index = u's infectious age; with the per-step recovery
      // draws keyed the same way, equal seeds align draws across tau values
      std::uint64_t age = step - 1 - infected_at[u];
      for (NodeId v : contacts(u)) {
        if (state[v] != kSusceptible) continue;
        double draw = keyed_uniform(run_key, {kInfectTag, u, v, age});
        if (draw < cfg.tau) {
          state[v] = kInfected;
          infected_at[v] = step;
          newly.push_back(v);
        }
      }
    }

    // recovery applies to nodes infected before this step
    std::size_t keep = 0;
    for (NodeId u : active) {
      std::uint64_t age = step - 1 - infected_at[u];
      double draw = keyed_uniform(run_key, {kRecoverTag, u, age});
      if (draw < cfg.gamma) {
        state[u] = kRecovered;
        ++r_count;
        --i_count;
      } else {
        active[keep++] = u;
      }
    }
    active.resize(keep);

    std::sort(newly.begin(), newly.end());
    if (!newly.empty()) {
      std::size_t mid = active.size();
      active.insert(active.end(), newly.begin(), newly.end());
      std::inplace_merge(active.begin(), active.begin() + mid, active.end());
      s_count -= static_cast<std::uint32_t>(newly.size());
      i_count += static_cast<std::uint32_t>(newly.size());
    }
    record();
  }

  trace.final_infected_ever = static_cast<std::uint32_t>(n) - s_count;
  trace.infected_ever.reserve(trace.final_infected_ever);
  for (NodeId v = 0; v < n; ++v) {
    if (state[v] != kSusceptible) trace.infected_ever.push_back(v);
  }
  return trace;
}

}  // namespace detail

SIRTrace run_sir(const DirectedGraph& g, const SIRConfig& cfg) {
  validate(g, cfg);
  return detail::run_sir_rep(g, cfg, 0);
}

SIRSummary evaluate_seeds(const DirectedGraph& g, const SIRConfig& cfg, int threads) {
  validate(g, cfg);
  const std::size_t reps = static_cast<std::size_t>(cfg.repetitions);

  std::vector<SIRTrace> traces(reps);
  parallel_blocks(reps, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      traces[r] = detail::run_sir_rep(g, cfg, r);
    }
  });

  SIRSummary summary;
  summary.final_counts.reserve(reps);
  std::size_t longest = 0;
  for (const auto& t : traces) {
    summary.final_counts.push_back(t.final_infected_ever);
    longest = std::max(longest, t.steps());
  }

  double mean = 0.0;
  for (auto c : summary.final_counts) mean += c;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (auto c : summary.final_counts) {
    double d = static_cast<double>(c) - mean;
    var += d * d;
  }
  summary.mean_final = mean;
  summary.std_final = reps > 1 ? std::sqrt(var / static_cast<double>(reps - 1)) : 0.0;

  const auto node_total = static_cast<double>(g.node_count());
  summary.mean_infected_ever.assign(longest, 0.0);
  for (const auto& t : traces) {
    for (std::size_t step = 0; step < longest; ++step) {
      double infected_ever =
          step < t.steps() ? node_total - t.susceptible[step] : t.final_infected_ever;
      summary.mean_infected_ever[step] += infected_ever;
    }
  }
  for (double& v : summary.mean_infected_ever) v /= static_cast<double>(reps);
  return summary;
}

void write_sir_summary_csv(const SIRSummary& s, std::ostream& out) {
  out << "step,mean_infected_ever\n";
  for (std::size_t i = 0; i < s.mean_infected_ever.size(); ++i) {
    out << i << ',' << format_double(s.mean_infected_ever[i]) << '\n';
  }
}

void write_sir_summary_json(const SIRSummary& s, const SIRConfig& cfg, std::ostream& out) {
  out << "{\"config\":{\"tau\":" << format_double(cfg.tau)
      << ",\"gamma\":" << format_double(cfg.gamma) << ",\"seeds\":" << cfg.seeds.size()
      << ",\"repetitions\":" << cfg.repetitions << ",\"rng_seed\":" << cfg.rng_seed
      << ",\"direction\":\""
      << (cfg.direction == SirDirection::Influence ? "influence" : "undirected") << "\"},"
      << "\"mean_final\":" << format_double(s.mean_final)
      << ",\"std_final\":" << format_double(s.std_final) << ",\"steps\":"
      << s.mean_infected_ever.size() << "}\n";
}

}  // namespace old
