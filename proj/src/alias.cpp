#include "old/alias.hpp"

#include "old/errors.hpp"

namespace old {

AliasTable::AliasTable(const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw ValidationError("alias table needs at least one weight");
  prob_.resize(n);
  alias_.resize(n);
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("alias table weights must be non-negative");
    total += w;
  }
  if (total <= 0.0) throw ValidationError("alias table weights sum to zero");

  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    std::size_t s = small.back(), l = large.back();
    small.pop_back();
    large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (std::size_t s : small) prob_[s] = 1.0;
  for (std::size_t l : large) prob_[l] = 1.0;
}

}  // namespace old
