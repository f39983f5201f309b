#include "cgdoi/doi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cgdoi {

double swap_penalty(const Instance& instance, int source, int target) {
  double rho = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < instance.num_facilities(); ++i) {
    rho = std::max(rho, instance.cost[i][target] - instance.cost[i][source]);
  }
  return rho;
}

std::vector<SwapPair> compute_swap_penalties(const Instance& instance) {
  std::vector<SwapPair> pairs;
  const int n = instance.num_customers();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v || instance.demands[u] < instance.demands[v]) continue;
      pairs.push_back({u, v, swap_penalty(instance, u, v)});
    }
  }
  return pairs;
}

SwapSet select_swap_subset(std::vector<SwapPair> pairs, double fraction,
                           int n_customers) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw std::invalid_argument("swap fraction must lie in (0, 1]");
  }
  const std::size_t keep = static_cast<std::size_t>(
      std::ceil(fraction * static_cast<double>(pairs.size())));
  std::sort(pairs.begin(), pairs.end(), [](const SwapPair& a, const SwapPair& b) {
    if (a.penalty != b.penalty) return a.penalty < b.penalty;
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });
  pairs.resize(std::min(keep, pairs.size()));
  // Stable listing order, independent of the input permutation.
  std::sort(pairs.begin(), pairs.end(), [](const SwapPair& a, const SwapPair& b) {
    if (a.source != b.source) return a.source < b.source;
    return a.target < b.target;
  });

  SwapSet set;
  set.pairs = std::move(pairs);
  set.outgoing.assign(n_customers, {});
  set.incoming.assign(n_customers, {});
  for (std::size_t k = 0; k < set.pairs.size(); ++k) {
    set.outgoing[set.pairs[k].source].push_back(static_cast<int>(k));
    set.incoming[set.pairs[k].target].push_back(static_cast<int>(k));
  }
  return set;
}

double compute_rebate(const Instance& instance, const Column& column, int u) {
  if (!column.covers(u)) {
    throw std::invalid_argument("rebate requested for an uncovered customer");
  }
  return instance.cost[column.facility][u];
}

RebateLadder build_ladder(int customer, std::vector<double> observed, int M) {
  if (M < 1) throw std::invalid_argument("quantile count must be >= 1");
  RebateLadder ladder;
  ladder.customer = customer;
  ladder.levels.push_back(0.0);
  if (!observed.empty()) {
    std::sort(observed.begin(), observed.end());
    const std::size_t n = observed.size();
    for (int k = 1; k <= M; ++k) {
      // Lower empirical quantile: x_(ceil(q*n)), 1-based.
      const std::size_t rank = static_cast<std::size_t>(
          std::ceil(static_cast<double>(k) * static_cast<double>(n) / M));
      ladder.levels.push_back(observed[std::min(rank, n) - 1]);
    }
    ladder.levels.push_back(observed.back());
  }
  std::sort(ladder.levels.begin(), ladder.levels.end());
  ladder.levels.erase(std::unique(ladder.levels.begin(), ladder.levels.end()),
                      ladder.levels.end());
  return ladder;
}

double round_rebate(const RebateLadder& ladder, double sigma) {
  if (sigma < 0) throw std::invalid_argument("rebate must be nonnegative");
  auto it = std::upper_bound(ladder.levels.begin(), ladder.levels.end(), sigma);
  return *std::prev(it);  // levels contain 0, so prev is always valid
}

bool update_due(int iteration, const DoiConfig& config) {
  if (iteration < 1) throw std::invalid_argument("iterations are 1-based");
  if (std::find(config.ladder_updates.begin(), config.ladder_updates.end(),
                iteration) != config.ladder_updates.end()) {
    return true;
  }
  const int last = config.ladder_updates.empty() ? 0 : config.ladder_updates.back();
  return iteration > last && config.ladder_period > 0 &&
         iteration % config.ladder_period == 0;
}

}  // namespace cgdoi
