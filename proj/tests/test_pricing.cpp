#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cgdoi/pricing.hpp"
#include "cgdoi/rng.hpp"
#include "oracles.hpp"

using namespace cgdoi;

TEST_CASE("knapsack worked examples") {
  SUBCASE("zero capacity") {
    KnapsackResult r = knapsack_dp({2, 3}, {3.0, 4.0}, 0);
    CHECK(r.items.empty());
    CHECK(r.value == 0.0);
  }
  SUBCASE("value beats count") {
    KnapsackResult r = knapsack_dp({2, 3}, {3.0, 4.0}, 4);
    CHECK(r.items == std::vector<int>{1});
    CHECK(r.value == 4.0);
  }
  SUBCASE("non-positive profits are never selected") {
    KnapsackResult r = knapsack_dp({1, 1, 1}, {-2.0, 0.0, 5.0}, 3);
    CHECK(r.items == std::vector<int>{2});
    CHECK(r.value == 5.0);
  }
  SUBCASE("ties prefer the lexicographically smallest set") {
    KnapsackResult r = knapsack_dp({1, 1}, {2.0, 2.0}, 1);
    CHECK(r.items == std::vector<int>{0});
  }
}

TEST_CASE("knapsack matches brute force on 300 random cases") {
  CounterRng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + (int)rng.next_index(12);
    std::vector<long> weights;
    std::vector<double> profits;
    for (int k = 0; k < n; ++k) {
      weights.push_back(1 + (long)rng.next_index(9));
      profits.push_back(rng.next_unit() * 8.0 - 2.0);
    }
    const long capacity = (long)rng.next_index(25);
    KnapsackResult dp = knapsack_dp(weights, profits, capacity);
    auto oracle = oracles::knapsack_brute(weights, profits, capacity);
    CAPTURE(trial);
    CHECK(dp.value == doctest::Approx(oracle.value).epsilon(1e-12));
    long used = 0;
    double collected = 0.0;
    for (int k : dp.items) {
      used += weights[k];
      collected += profits[k];
    }
    CHECK(used <= capacity);
    CHECK(collected == doctest::Approx(dp.value).epsilon(1e-12));
  }
}

TEST_CASE("price_facility") {
  Instance inst;
  inst.facilities = {{0.0, 3}};
  inst.demands = {2, 2};
  inst.cost = {{1.0, 1.0}};

  SUBCASE("zero duals never price out") {
    Pricer pricer(inst);
    PricingDuals duals{{0.0, 0.0}, {0.0}};
    CHECK_FALSE(pricer.price_facility(0, duals).has_value());
  }
  SUBCASE("capacity admits one customer") {
    Pricer pricer(inst);
    PricingDuals duals{{5.0, 5.0}, {0.0}};
    auto priced = pricer.price_facility(0, duals);
    REQUIRE(priced.has_value());
    CHECK(priced->column.customers.size() == 1);
    CHECK(priced->reduced_cost == doctest::Approx(-4.0));
    // Recompute the reduced cost independently.
    double rc = priced->column.cost;
    for (int u : priced->column.customers) rc -= duals.alpha[u];
    rc -= duals.beta[priced->column.facility];
    CHECK(rc == doctest::Approx(priced->reduced_cost).epsilon(1e-12));
  }
  SUBCASE("convexity dual shifts the reduced cost") {
    Pricer pricer(inst);
    PricingDuals duals{{5.0, 5.0}, {-3.9}};
    auto priced = pricer.price_facility(0, duals);
    REQUIRE(priced.has_value());
    CHECK(priced->reduced_cost == doctest::Approx(-0.1));
    duals.beta[0] = -4.5;
    CHECK_FALSE(pricer.price_facility(0, duals).has_value());
  }
}

TEST_CASE("price_all honors the rotation and the limit") {
  Instance inst;
  inst.facilities.assign(30, {0.0, 10});
  inst.demands.assign(4, 1);
  inst.cost.assign(30, std::vector<double>(4, 0.5));
  Pricer pricer(inst);
  PricingDuals duals{{2.0, 2.0, 2.0, 2.0}, std::vector<double>(30, 0.0)};

  SUBCASE("every facility improves: exactly the limit, one per facility") {
    auto batch = pricer.price_all(duals, 20);
    REQUIRE(batch.size() == 20);
    std::vector<int> facilities;
    for (const auto& pc : batch) facilities.push_back(pc.column.facility);
    std::vector<int> expect;
    for (int i = 0; i < 20; ++i) expect.push_back(i);
    CHECK(facilities == expect);
    // The next pass resumes after the last harvested facility.
    auto next = pricer.price_all(duals, 20);
    REQUIRE(next.size() == 20);
    CHECK(next.front().column.facility == 20);
    CHECK(next.back().column.facility == 9);
  }
  SUBCASE("limit 1 returns the first improving facility") {
    auto batch = pricer.price_all(duals, 1);
    REQUIRE(batch.size() == 1);
    CHECK(batch[0].column.facility == 0);
  }
  SUBCASE("termination returns an empty pass") {
    PricingDuals flat{{0.0, 0.0, 0.0, 0.0}, std::vector<double>(30, 0.0)};
    CHECK(pricer.price_all(flat, 20).empty());
  }
}

TEST_CASE("scan returns true per-facility minima alongside the harvest") {
  for (std::uint64_t seed = 60; seed <= 63; ++seed) {
    Instance inst = oracles::tiny_instance(seed);
    CounterRng rng(seed * 31);
    PricingDuals duals;
    for (int u = 0; u < inst.num_customers(); ++u) {
      duals.alpha.push_back(rng.next_unit() * 2.0);
    }
    for (int i = 0; i < inst.num_facilities(); ++i) {
      duals.beta.push_back(-rng.next_unit());
    }
    Pricer pricer(inst);
    auto scan = pricer.scan(duals, 20);
    REQUIRE((int)scan.min_reduced_cost.size() == inst.num_facilities());

    // Oracle: brute-force best reduced cost per facility.
    for (int i = 0; i < inst.num_facilities(); ++i) {
      double best = 0.0;  // empty pattern is always available
      for (const auto& col : oracles::enumerate_columns(inst)) {
        if (col.facility != i) continue;
        double rc = col.cost - duals.beta[i];
        for (int u : col.customers) rc -= duals.alpha[u];
        best = std::min(best, rc);
      }
      const double empty_rc = inst.facilities[i].fixed_cost - duals.beta[i];
      best = std::min(best, empty_rc);
      CAPTURE(seed);
      CAPTURE(i);
      CHECK(std::min(0.0, scan.min_reduced_cost[i]) ==
            doctest::Approx(std::min(0.0, best)).epsilon(1e-9));
    }
    // Harvest agrees with price_all from the same starting cursor.
    Pricer fresh(inst);
    auto batch = fresh.price_all(duals, 20);
    REQUIRE(batch.size() == scan.columns.size());
    for (std::size_t k = 0; k < batch.size(); ++k) {
      CHECK(batch[k].column == scan.columns[k].column);
      CHECK(batch[k].reduced_cost == scan.columns[k].reduced_cost);
    }
  }
}

TEST_CASE("empty pass certifies termination on a tiny instance") {
  for (std::uint64_t seed = 70; seed <= 72; ++seed) {
    Instance inst = oracles::tiny_instance(seed);
    // Duals low enough that nothing prices out.
    PricingDuals duals;
    duals.alpha.assign(inst.num_customers(), 0.0);
    duals.beta.assign(inst.num_facilities(), 0.0);
    Pricer pricer(inst);
    REQUIRE(pricer.price_all(duals, 20).empty());
    for (const auto& col : oracles::enumerate_columns(inst)) {
      double rc = col.cost - duals.beta[col.facility];
      for (int u : col.customers) rc -= duals.alpha[u];
      CHECK(rc >= -kPricingEpsilon);
    }
  }
}
