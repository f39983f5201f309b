#pragma once

#include <optional>
#include <vector>

#include "cgdoi/column.hpp"
#include "cgdoi/instance.hpp"

namespace cgdoi {

// Duals used by pricing. The bound-row duals are deliberately absent: the
// knapsack pricer stays the standard one and the method remains correct.
struct PricingDuals {
  std::vector<double> alpha;  // per customer
  std::vector<double> beta;   // per facility
};

struct PricedColumn {
  Column column;
  double reduced_cost = 0.0;  // c_l - sum alpha_u - beta_i
};

struct KnapsackResult {
  std::vector<int> items;  // lexicographically smallest optimal index set
  double value = 0.0;
};

// Exact 0-1 knapsack by dynamic programming over the integer capacity.
// Only items with strictly positive profit are candidates.
KnapsackResult knapsack_dp(const std::vector<long>& weights,
                           const std::vector<double>& profits, long capacity);

inline constexpr double kPricingEpsilon = 1e-7;

// Per-facility knapsack pricing with a persistent round-robin cursor so
// successive passes spread column discovery across facilities.
class Pricer {
 public:
  explicit Pricer(const Instance& instance) : instance_(instance) {}

  // Best column for facility i, or nullopt when its minimum reduced cost is
  // >= -epsilon (or the best selection is empty).
  std::optional<PricedColumn> price_facility(int i, const PricingDuals& duals) const;

  // First `limit` negative-reduced-cost columns (one per facility) found
  // while rotating over the facilities; an empty result means no facility
  // prices out and column generation is complete.
  std::vector<PricedColumn> price_all(const PricingDuals& duals, int limit = 20);

  // Full pass: the same harvested columns as price_all plus the minimum
  // reduced cost of every facility (min 0 when nothing negative), for the
  // Lagrangian bound.
  struct ScanResult {
    std::vector<PricedColumn> columns;
    std::vector<double> min_reduced_cost;  // per facility
  };
  ScanResult scan(const PricingDuals& duals, int limit = 20);

  int cursor() const { return cursor_; }

 private:
  std::optional<PricedColumn> best_for_facility(int i, const PricingDuals& duals) const;

  const Instance& instance_;
  int cursor_ = -1;  // last facility that produced a column
};

}  // namespace cgdoi
