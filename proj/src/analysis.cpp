#include "old/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "old/errors.hpp"

namespace old {

std::vector<MergedCandidate> merge_same_ranker(const std::vector<RankingResult>& lists,
                                               const std::function<bool(NodeId)>& keep) {
  if (lists.empty()) throw ValidationError("merge_same_ranker: no lists given");
  const std::size_t n = lists.front().entries.size();
  for (const auto& l : lists) {
    if (l.entries.size() != n) {
      throw ValidationError("merge_same_ranker: lists cover different graphs");
    }
  }

  std::unordered_map<NodeId, MergedCandidate> tally;
  for (const auto& list : lists) {
    std::size_t position = 0;
    for (const auto& entry : list.entries) {
      if (keep && !keep(entry.node)) continue;
      auto& cand = tally.try_emplace(entry.node, MergedCandidate{entry.node, 0.0, {}}).first->second;
      cand.borda += static_cast<double>(n) - static_cast<double>(position);
      cand.positions.emplace_back(list.method, position);
      ++position;
    }
  }

  std::vector<MergedCandidate> merged;
  merged.reserve(tally.size());
  for (auto& [_, cand] : tally) merged.push_back(std::move(cand));
  std::sort(merged.begin(), merged.end(), [](const MergedCandidate& a, const MergedCandidate& b) {
    if (a.borda != b.borda) return a.borda > b.borda;
    return a.node < b.node;
  });
  return merged;
}

double percentile_value(std::vector<double> values, double p) {
  if (values.empty()) throw ValidationError("percentile of empty sample");
  if (!(p >= 0.0 && p < 100.0)) throw ValidationError("percentile must be in [0,100)");
  std::sort(values.begin(), values.end());
  if (p == 0.0) return values.front();
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[rank == 0 ? 0 : rank - 1];
}

std::function<bool(NodeId)> outlier_keep_predicate(const DirectedGraph& g, double percentile) {
  std::vector<double> in_degrees(g.node_count()), out_degrees(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    in_degrees[i] = static_cast<double>(g.in_degree(i));
    out_degrees[i] = static_cast<double>(g.out_degree(i));
  }
  double in_cut = percentile_value(in_degrees, percentile);
  double out_cut = percentile_value(out_degrees, percentile);
  return [&g, in_cut, out_cut](NodeId i) {
    return !(static_cast<double>(g.in_degree(i)) < in_cut &&
             static_cast<double>(g.out_degree(i)) < out_cut);
  };
}

std::vector<NodeId> apply_outlier_filter(const std::vector<NodeId>& nodes,
                                         const DirectedGraph& g, double percentile) {
  auto keep = outlier_keep_predicate(g, percentile);
  std::vector<NodeId> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) {
    if (keep(v)) out.push_back(v);
  }
  return out;
}

CombinedLeaders combine_leaders(const std::vector<MergedCandidate>& asnerank_merged,
                                const std::vector<MergedCandidate>& nlcrank_merged,
                                const CombineConfig& cfg) {
  auto [r1, r2] = cfg.ratio;
  if (r1 < 1 || r2 < 1) throw ValidationError("combine_leaders: ratio parts must be positive");
  std::size_t n_asne = cfg.n * static_cast<std::size_t>(r1) / static_cast<std::size_t>(r1 + r2);
  std::size_t n_nlc = cfg.n - n_asne;
  if (n_asne < 1 || n_nlc < 1) {
    throw ValidationError("combine_leaders: n=" + std::to_string(cfg.n) +
                          " leaves an empty part under ratio " + std::to_string(r1) + ":" +
                          std::to_string(r2));
  }
  if (asnerank_merged.size() < n_asne) {
    throw ValidationError("combine_leaders: ASNERank candidates short by " +
                          std::to_string(n_asne - asnerank_merged.size()) + " (need " +
                          std::to_string(n_asne) + ", have " +
                          std::to_string(asnerank_merged.size()) + ")");
  }

  CombinedLeaders out;
  std::unordered_set<NodeId> taken;
  for (std::size_t i = 0; i < n_asne; ++i) {
    out.asnerank_part.push_back(asnerank_merged[i]);
    taken.insert(asnerank_merged[i].node);
  }
  for (const auto& cand : nlcrank_merged) {
    if (out.nlcrank_part.size() == n_nlc) break;
    if (taken.count(cand.node)) continue;  // ASNERank part wins duplicates
    out.nlcrank_part.push_back(cand);
    taken.insert(cand.node);
  }
  if (out.nlcrank_part.size() < n_nlc) {
    throw ValidationError("combine_leaders: NLCRank candidates short by " +
                          std::to_string(n_nlc - out.nlcrank_part.size()) + " after dedup (need " +
                          std::to_string(n_nlc) + ")");
  }
  return out;
}

AttitudeSummary attitude_summary(const std::vector<NodeId>& nodes, const AttributeTable& attrs) {
  if (nodes.empty()) throw ValidationError("attitude_summary: empty node set");
  std::vector<NodeId> missing;
  for (NodeId v : nodes) {
    if (!attrs.has_attitude(v)) missing.push_back(v);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) {
      if (i) list += ", ";
      list += std::to_string(missing[i]);
    }
    if (missing.size() > 10) list += ", ...";
    throw ValidationError("attitude_summary: " + std::to_string(missing.size()) +
                          " node(s) lack attitude data: " + list);
  }
  AttitudeSummary s;
  for (NodeId v : nodes) {
    auto a = attrs.attitude(v);
    s.support += a[0];
    s.reject += a[1];
    s.irrelevant += a[2];
  }
  auto count = static_cast<double>(nodes.size());
  s.support /= count;
  s.reject /= count;
  s.irrelevant /= count;
  return s;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (const auto& x : sa) inter += sb.count(x);
  std::size_t uni = sa.size() + sb.size() - inter;
  if (uni == 0) return 1.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

PersistenceReport temporal_overlap(const std::vector<TopList>& lists) {
  if (lists.size() < 2) {
    throw ValidationError("temporal_overlap: needs at least two snapshots");
  }
  PersistenceReport report;
  for (std::size_t i = 0; i + 1 < lists.size(); ++i) {
    report.adjacent.push_back(
        {lists[i].label, lists[i + 1].label, jaccard(lists[i].ids, lists[i + 1].ids)});
  }

  std::map<std::string, PersistenceReport::NodeStat> stats;
  for (const auto& list : lists) {
    for (std::size_t pos = 0; pos < list.ids.size(); ++pos) {
      auto& st = stats[list.ids[pos]];
      st.id = list.ids[pos];
      ++st.appearances;
      st.rank_by_label[list.label] = pos + 1;
    }
  }
  for (auto& [_, st] : stats) report.nodes.push_back(std::move(st));
  std::sort(report.nodes.begin(), report.nodes.end(),
            [](const PersistenceReport::NodeStat& a, const PersistenceReport::NodeStat& b) {
              if (a.appearances != b.appearances) return a.appearances > b.appearances;
              return a.id < b.id;
            });
  return report;
}

}  // namespace old
