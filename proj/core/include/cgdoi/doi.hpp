#pragma once

#include <vector>

#include "cgdoi/column.hpp"
#include "cgdoi/instance.hpp"

namespace cgdoi {

enum class DoiVariant { none, smooth, flexible, both };

struct DoiConfig {
  DoiVariant variant = DoiVariant::none;
  int quantile_count = 20;     // M
  double swap_fraction = 0.25;
  std::vector<int> ladder_updates = {1, 5, 25, 100, 200, 500};
  int ladder_period = 500;     // every this many iterations after the list

  bool uses_swaps() const {
    return variant == DoiVariant::smooth || variant == DoiVariant::both;
  }
  bool uses_rebates() const {
    return variant == DoiVariant::flexible || variant == DoiVariant::both;
  }
};

// Ordered pair (source, target): the target may replace the source in any
// column, paying at most `penalty` extra cost. Requires d_source >= d_target
// so the swapped column stays within capacity.
struct SwapPair {
  int source = -1;  // s-
  int target = -1;  // s+
  double penalty = 0.0;
};

struct SwapSet {
  std::vector<SwapPair> pairs;
  std::vector<std::vector<int>> outgoing;  // per customer u: pairs with source u
  std::vector<std::vector<int>> incoming;  // per customer u: pairs with target u
};

// penalty(u,v) = max_i (c_iv - c_iu) for every ordered pair with
// d_u >= d_v. Negative penalties are legitimate (a strictly improving swap).
std::vector<SwapPair> compute_swap_penalties(const Instance& instance);

// Worst-case cost increase of swapping (u -> v), the same max formula.
double swap_penalty(const Instance& instance, int source, int target);

// Keeps the ceil(fraction * n) pairs of smallest penalty; ties resolved by
// (source, target) index order.
SwapSet select_swap_subset(std::vector<SwapPair> pairs, double fraction,
                           int n_customers);

// Rebate for over-covering u with this column: the assignment cost c_iu.
double compute_rebate(const Instance& instance, const Column& column, int u);

// Sorted distinct admissible rebate levels for one customer; always contains
// 0 and the largest observed value.
struct RebateLadder {
  int customer = -1;
  std::vector<double> levels;
};

// Levels are {0} plus the lower empirical quantiles of `observed` at k/M,
// k = 1..M (x_(ceil(q*n)) over the sorted values), which include the
// maximum. An empty observation set yields the ladder {0}.
RebateLadder build_ladder(int customer, std::vector<double> observed, int M);

// Largest ladder level <= sigma; total since 0 is always a level.
double round_rebate(const RebateLadder& ladder, double sigma);

// True on iterations 1, 5, 25, 100, 200, 500 and every 500 onward.
bool update_due(int iteration, const DoiConfig& config);

}  // namespace cgdoi
