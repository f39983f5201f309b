#include "cgdoi/pricing.hpp"

#include <stdexcept>

namespace cgdoi {

KnapsackResult knapsack_dp(const std::vector<long>& weights,
                           const std::vector<double>& profits, long capacity) {
  if (weights.size() != profits.size()) {
    throw std::invalid_argument("weights and profits differ in length");
  }
  if (capacity < 0) throw std::invalid_argument("negative capacity");

  std::vector<int> cand;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0) throw std::invalid_argument("weights must be positive");
    if (profits[k] > 0 && weights[k] <= capacity) cand.push_back(static_cast<int>(k));
  }
  const int n = static_cast<int>(cand.size());
  const long cap = capacity;

  // dp[i][w]: best profit using candidates i..n-1 under residual capacity w.
  std::vector<std::vector<double>> dp(n + 1, std::vector<double>(cap + 1, 0.0));
  for (int i = n - 1; i >= 0; --i) {
    const long w_i = weights[cand[i]];
    const double p_i = profits[cand[i]];
    for (long w = 0; w <= cap; ++w) {
      double best = dp[i + 1][w];
      if (w_i <= w) best = std::max(best, p_i + dp[i + 1][w - w_i]);
      dp[i][w] = best;
    }
  }

  KnapsackResult result;
  result.value = dp.empty() ? 0.0 : dp[0][cap];
  // Greedy front-to-back reconstruction yields the lexicographically
  // smallest optimal index set.
  long w = cap;
  for (int i = 0; i < n; ++i) {
    const long w_i = weights[cand[i]];
    const double p_i = profits[cand[i]];
    if (w_i <= w && p_i + dp[i + 1][w - w_i] == dp[i][w]) {
      result.items.push_back(cand[i]);
      w -= w_i;
    }
  }
  return result;
}

std::optional<PricedColumn> Pricer::best_for_facility(int i,
                                                      const PricingDuals& duals) const {
  const int n = instance_.num_customers();
  std::vector<long> weights(n);
  std::vector<double> profits(n);
  for (int u = 0; u < n; ++u) {
    weights[u] = instance_.demands[u];
    profits[u] = duals.alpha[u] - instance_.cost[i][u];
  }
  KnapsackResult best =
      knapsack_dp(weights, profits, instance_.facilities[i].capacity);
  if (best.items.empty()) return std::nullopt;
  PricedColumn priced;
  priced.reduced_cost =
      instance_.facilities[i].fixed_cost - duals.beta[i] - best.value;
  priced.column = make_column(instance_, i, std::move(best.items));
  return priced;
}

std::optional<PricedColumn> Pricer::price_facility(int i,
                                                   const PricingDuals& duals) const {
  auto priced = best_for_facility(i, duals);
  if (!priced || priced->reduced_cost >= -kPricingEpsilon) return std::nullopt;
  return priced;
}

std::vector<PricedColumn> Pricer::price_all(const PricingDuals& duals, int limit) {
  if (limit < 1) throw std::invalid_argument("pricing limit must be >= 1");
  const int m = instance_.num_facilities();
  std::vector<PricedColumn> found;
  for (int step = 1; step <= m; ++step) {
    const int i = (cursor_ + step) % m;
    if (auto priced = price_facility(i, duals)) {
      found.push_back(std::move(*priced));
      if (static_cast<int>(found.size()) == limit) {
        cursor_ = i;
        return found;
      }
    }
  }
  if (!found.empty()) cursor_ = found.back().column.facility;
  return found;
}

Pricer::ScanResult Pricer::scan(const PricingDuals& duals, int limit) {
  if (limit < 1) throw std::invalid_argument("pricing limit must be >= 1");
  const int m = instance_.num_facilities();
  ScanResult result;
  result.min_reduced_cost.assign(m, 0.0);
  for (int step = 1; step <= m; ++step) {
    const int i = (cursor_ + step) % m;
    if (auto priced = best_for_facility(i, duals)) {
      result.min_reduced_cost[i] = priced->reduced_cost;
      if (priced->reduced_cost < -kPricingEpsilon &&
          static_cast<int>(result.columns.size()) < limit) {
        result.columns.push_back(std::move(*priced));
      }
    }
  }
  if (!result.columns.empty()) cursor_ = result.columns.back().column.facility;
  return result;
}

}  // namespace cgdoi
