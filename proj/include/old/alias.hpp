#pragma once

#include <vector>

#include "old/rng.hpp"

namespace old {

// Walker alias table for O(1) categorical sampling; construction is
// deterministic (index-ordered work stacks). Zero-weight entries are never
// drawn.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& weights);

  std::size_t sample(Rng& rng) const {
    std::size_t i = rng.next_below(prob_.size());
    return rng.next_double() < prob_[i] ? i : alias_[i];
  }

  std::size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

}  // namespace old
