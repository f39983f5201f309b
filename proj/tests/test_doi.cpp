#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cgdoi/doi.hpp"
#include "cgdoi/rng.hpp"
#include "oracles.hpp"

using namespace cgdoi;

namespace {

Instance two_by_two() {
  Instance inst;
  inst.facilities = {{1.0, 10}, {1.0, 10}};
  inst.demands = {2, 2};
  inst.cost = {{1.0, 4.0}, {2.0, 3.0}};
  return inst;
}

}  // namespace

TEST_CASE("swap penalties follow the max formula") {
  Instance inst = two_by_two();
  SUBCASE("worked 2x2 example") {
    CHECK(swap_penalty(inst, 0, 1) == 3.0);  // max(4-1, 3-2)
    CHECK(swap_penalty(inst, 1, 0) == -1.0); // max(1-4, 2-3): improving swap
    auto pairs = compute_swap_penalties(inst);
    REQUIRE(pairs.size() == 2);  // equal demands: both directions
    for (const auto& s : pairs) {
      CHECK(s.penalty == swap_penalty(inst, s.source, s.target));
    }
  }
  SUBCASE("identical cost columns give zero penalty") {
    inst.cost = {{1.0, 1.0}, {2.0, 2.0}};
    CHECK(swap_penalty(inst, 0, 1) == 0.0);
    CHECK(swap_penalty(inst, 1, 0) == 0.0);
  }
  SUBCASE("single customer yields no pairs") {
    Instance one;
    one.facilities = {{0.0, 5}};
    one.demands = {1};
    one.cost = {{0.5}};
    CHECK(compute_swap_penalties(one).empty());
  }
  SUBCASE("demand ordering restricts pair direction") {
    inst.demands = {3, 2};
    auto pairs = compute_swap_penalties(inst);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].source == 0);  // only d_u >= d_v survives
    CHECK(pairs[0].target == 1);
  }
}

TEST_CASE("swap subset selection") {
  std::vector<SwapPair> pairs = {
      {0, 1, 5.0}, {1, 0, 1.0}, {2, 3, 3.0}, {3, 2, 2.0}};
  SUBCASE("fraction 1 keeps everything") {
    SwapSet all = select_swap_subset(pairs, 1.0, 4);
    CHECK(all.pairs.size() == 4);
  }
  SUBCASE("fraction 0.5 keeps the smallest penalties") {
    SwapSet half = select_swap_subset(pairs, 0.5, 4);
    REQUIRE(half.pairs.size() == 2);
    std::set<double> kept;
    for (const auto& s : half.pairs) kept.insert(s.penalty);
    CHECK(kept == std::set<double>{1.0, 2.0});
  }
  SUBCASE("selection is independent of input permutation") {
    std::vector<SwapPair> shuffled = {pairs[2], pairs[0], pairs[3], pairs[1]};
    SwapSet a = select_swap_subset(pairs, 0.5, 4);
    SwapSet b = select_swap_subset(shuffled, 0.5, 4);
    REQUIRE(a.pairs.size() == b.pairs.size());
    for (std::size_t k = 0; k < a.pairs.size(); ++k) {
      CHECK(a.pairs[k].source == b.pairs[k].source);
      CHECK(a.pairs[k].target == b.pairs[k].target);
    }
  }
  SUBCASE("per-customer indexes are consistent") {
    SwapSet all = select_swap_subset(pairs, 1.0, 4);
    REQUIRE(all.outgoing.size() == 4);
    REQUIRE(all.incoming.size() == 4);
    for (std::size_t k = 0; k < all.pairs.size(); ++k) {
      const auto& out = all.outgoing[all.pairs[k].source];
      const auto& in = all.incoming[all.pairs[k].target];
      CHECK(std::count(out.begin(), out.end(), (int)k) == 1);
      CHECK(std::count(in.begin(), in.end(), (int)k) == 1);
    }
  }
}

TEST_CASE("triangle inequality of the full penalty family") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Instance inst = oracles::tiny_instance(seed);
    const int n = inst.num_customers();
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w) {
          if (u == v || v == w || u == w) continue;
          if (inst.demands[u] < inst.demands[v]) continue;
          if (inst.demands[v] < inst.demands[w]) continue;
          CHECK(swap_penalty(inst, u, w) <=
                swap_penalty(inst, u, v) + swap_penalty(inst, v, w) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("swap-cost bound holds for every column by enumeration") {
  for (std::uint64_t seed = 20; seed <= 24; ++seed) {
    Instance inst = oracles::tiny_instance(seed);
    auto columns = oracles::enumerate_columns(inst);
    for (const auto& col : columns) {
      for (int u : col.customers) {
        for (int v = 0; v < inst.num_customers(); ++v) {
          if (col.covers(v) || inst.demands[v] > inst.demands[u]) continue;
          std::vector<int> swapped;
          for (int w : col.customers) {
            if (w != u) swapped.push_back(w);
          }
          swapped.push_back(v);
          std::sort(swapped.begin(), swapped.end());
          Column after = make_column(inst, col.facility, swapped);
          CHECK(after.cost - col.cost <=
                swap_penalty(inst, u, v) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("rebates") {
  Instance inst = two_by_two();
  Column col = make_column(inst, 1, {0, 1});
  SUBCASE("rebate reads the assignment cost") {
    CHECK(compute_rebate(inst, col, 0) == 2.0);
    CHECK(compute_rebate(inst, col, 1) == 3.0);
  }
  SUBCASE("uncovered customer is an error") {
    Column solo = make_column(inst, 0, {0});
    CHECK_THROWS_AS(compute_rebate(inst, solo, 1), std::invalid_argument);
  }
  SUBCASE("removal saving equals the rebate sum on every subset") {
    for (std::uint64_t seed = 30; seed <= 32; ++seed) {
      Instance tiny = oracles::tiny_instance(seed);
      // A three-customer column from the largest facility.
      int fac = 0;
      for (int i = 1; i < tiny.num_facilities(); ++i) {
        if (tiny.facilities[i].capacity > tiny.facilities[fac].capacity) fac = i;
      }
      std::vector<int> members = {0, 1, 2};
      long demand = tiny.demands[0] + tiny.demands[1] + tiny.demands[2];
      if (demand > tiny.facilities[fac].capacity) continue;
      Column full = make_column(tiny, fac, members);
      for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<int> keep;
        double rebate_sum = 0.0;
        for (int u : members) {
          if (mask & (1u << u)) rebate_sum += compute_rebate(tiny, full, u);
          else keep.push_back(u);
        }
        double removed_cost = keep.empty()
            ? tiny.facilities[fac].fixed_cost
            : make_column(tiny, fac, keep).cost;
        CHECK(full.cost - removed_cost == doctest::Approx(rebate_sum).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ladder construction") {
  SUBCASE("1..100 with M=20 contains 0 and the maximum") {
    std::vector<double> observed;
    for (int k = 1; k <= 100; ++k) observed.push_back(k);
    RebateLadder ladder = build_ladder(7, observed, 20);
    CHECK(ladder.customer == 7);
    CHECK(ladder.levels.front() == 0.0);
    CHECK(ladder.levels.back() == 100.0);
    CHECK(ladder.levels.size() <= 22);
    CHECK(std::is_sorted(ladder.levels.begin(), ladder.levels.end()));
  }
  SUBCASE("degenerate observation set") {
    RebateLadder ladder = build_ladder(0, {7.0}, 20);
    CHECK(ladder.levels == std::vector<double>{0.0, 7.0});
  }
  SUBCASE("empty observations give the zero ladder") {
    RebateLadder ladder = build_ladder(0, {}, 20);
    CHECK(ladder.levels == std::vector<double>{0.0});
  }
  SUBCASE("1000 draws match the sort-and-index oracle") {
    CounterRng rng(5);
    std::vector<double> observed;
    for (int k = 0; k < 1000; ++k) observed.push_back(rng.next_unit() * 50.0);
    const int M = 20;
    RebateLadder ladder = build_ladder(0, observed, M);
    std::vector<double> sorted = observed;
    std::sort(sorted.begin(), sorted.end());
    std::set<double> expected = {0.0};
    const int n = (int)sorted.size();
    for (int k = 1; k <= M; ++k) {
      // Lower empirical quantile at level k/M: x_(ceil(k*n/M)).
      const int rank = (k * n + M - 1) / M;
      expected.insert(sorted[rank - 1]);
    }
    expected.insert(sorted.back());
    CHECK(ladder.levels == std::vector<double>(expected.begin(), expected.end()));
  }
}

TEST_CASE("rebate rounding") {
  RebateLadder ladder{0, {0.0, 5.0, 10.0}};
  CHECK(round_rebate(ladder, 7.3) == 5.0);
  CHECK(round_rebate(ladder, 5.0) == 5.0);
  CHECK(round_rebate(ladder, 4.999) == 0.0);
  CHECK(round_rebate(ladder, 12.0) == 10.0);
  CHECK(round_rebate(ladder, 0.0) == 0.0);
  SUBCASE("monotone and never above the input") {
    CounterRng rng(9);
    double prev = 0.0;
    for (double sigma = 0.0; sigma <= 12.0; sigma += 0.37) {
      const double rounded = round_rebate(ladder, sigma);
      CHECK(rounded <= sigma);
      CHECK(rounded >= prev);
      prev = rounded;
    }
    (void)rng;
  }
}

TEST_CASE("ladder update schedule") {
  DoiConfig config;
  for (int it : {1, 5, 25, 100, 200, 500, 1000, 1500, 2000}) {
    CAPTURE(it);
    CHECK(update_due(it, config));
  }
  for (int it : {2, 4, 26, 99, 501, 750, 1001}) {
    CAPTURE(it);
    CHECK_FALSE(update_due(it, config));
  }
}
