#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "old/graph.hpp"

namespace old {

enum class SirDirection {
  Influence,  // reversed follow edges: an infected followee contacts its followers
  Undirected
};

struct SIRConfig {
  double tau = 0.015;  // per-contact infection probability
  double gamma = 1.0;  // per-step recovery probability
  std::vector<NodeId> seeds;
  int repetitions = 50;
  std::uint64_t rng_seed = 0;
  SirDirection direction = SirDirection::Influence;
};

struct SIRTrace {
  // step 0 is the initial state; susceptible[t] + infected[t] + recovered[t]
  // equals the node count at every t, and the run ends with infected == 0
  std::vector<std::uint32_t> susceptible, infected, recovered;
  std::vector<NodeId> infected_ever;  // every node infected at any time, ascending
  std::uint32_t final_infected_ever = 0;
  std::size_t steps() const { return susceptible.size(); }
};

struct SIRSummary {
  double mean_final = 0.0;
  double std_final = 0.0;  // sample standard deviation (0 for one repetition)
  std::vector<double> mean_infected_ever;  // per step, shorter runs padded with their final value
  std::vector<std::uint32_t> final_counts;  // per repetition
};

// One synchronous discrete-time run. Every infected node contacts each
// susceptible neighbor along the influence direction and infects it when an
// independent uniform draw falls below tau; nodes infected in an earlier step
// then recover when a draw falls below gamma; newly infected nodes become
// infectious the next step. Draws are keyed by (seed, repetition, contact
// identity, attempt), so runs with the same seed and different tau see
// aligned draws (common random numbers).
SIRTrace run_sir(const DirectedGraph& g, const SIRConfig& cfg);

// `repetitions` independent runs on decorrelated streams, aggregated.
SIRSummary evaluate_seeds(const DirectedGraph& g, const SIRConfig& cfg, int threads = 1);

// CSV "step,mean_infected_ever"; JSON carries the config echo and the
// final-count statistics.
void write_sir_summary_csv(const SIRSummary& s, std::ostream& out);
void write_sir_summary_json(const SIRSummary& s, const SIRConfig& cfg, std::ostream& out);

namespace detail {
// Single run on an explicit stream key (repetition index).
SIRTrace run_sir_rep(const DirectedGraph& g, const SIRConfig& cfg, std::uint64_t repetition);
}  // namespace detail

}  // namespace old
