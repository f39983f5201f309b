#include "cgdoi/cg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>

#include "cgdoi/pricing.hpp"

namespace cgdoi {

namespace {

std::vector<RebateLadder> ladders_from_pool(const Instance& instance,
                                            const ColumnPool& pool, int M) {
  std::vector<std::vector<double>> observed(instance.num_customers());
  for (const auto& column : pool.columns()) {
    for (int u : column.customers) {
      observed[u].push_back(instance.cost[column.facility][u]);
    }
  }
  std::vector<RebateLadder> ladders;
  ladders.reserve(observed.size());
  for (int u = 0; u < instance.num_customers(); ++u) {
    ladders.push_back(build_ladder(u, std::move(observed[u]), M));
  }
  return ladders;
}

}  // namespace

double lagrangian_lower_bound(double rmp_objective,
                              const std::vector<double>& min_reduced_costs) {
  double bound = rmp_objective;
  for (double rc : min_reduced_costs) bound += std::min(0.0, rc);
  return bound;
}

CgResult run(const Instance& instance, const DoiConfig& config,
             const RunParams& params) {
  {
    auto violations = validate(instance);
    if (!violations.empty()) {
      throw std::invalid_argument("invalid instance: " + violations.front());
    }
  }

  SwapSet swaps;
  std::vector<RebateLadder> ladders;
  if (config.uses_swaps()) {
    swaps = select_swap_subset(compute_swap_penalties(instance),
                               config.swap_fraction, instance.num_customers());
  }
  if (config.uses_rebates()) {
    for (int u = 0; u < instance.num_customers(); ++u) {
      ladders.push_back(build_ladder(u, {}, config.quantile_count));
    }
  }
  RmpModel model(instance, config, std::move(swaps), std::move(ladders));
  Pricer pricer(instance);

  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  };

  CgResult result;
  double best_lb = -std::numeric_limits<double>::infinity();
  for (int it = 1; it <= params.max_iterations; ++it) {
    if (config.uses_rebates() && update_due(it, config)) {
      model.rebuild_ladders(
          ladders_from_pool(instance, model.pool(), config.quantile_count));
    }
    RmpSolution sol = model.solve();
    auto scan = pricer.scan({sol.alpha, sol.beta}, params.price_limit);

    const double lb = lagrangian_lower_bound(sol.objective, scan.min_reduced_cost);
    best_lb = std::max(best_lb, lb);
    result.trace.push_back({it, elapsed(), sol.objective, lb, best_lb,
                            static_cast<int>(scan.columns.size()),
                            sol.doi_activity()});
    if (params.observer) params.observer(model, sol, it);

    result.iterations = it;
    result.objective = sol.objective;
    if (scan.columns.empty()) {
      result.converged = true;
      // Close the pool under the repair moves so a theta-only re-solve of the
      // final pool attains the same objective as the stabilized one.
      bool artificial_active = false;
      for (double a : sol.artificial) {
        if (a > 1e-9) artificial_active = true;
      }
      if (config.variant != DoiVariant::none && !artificial_active &&
          sol.doi_activity() > 1e-12) {
        CoverSolution cover = repair(instance, sol, model);
        std::vector<Column> fresh;
        fresh.reserve(cover.patterns.size());
        for (const auto& [column, weight] : cover.patterns) {
          (void)weight;
          fresh.push_back(column);
        }
        model.add_columns(fresh);
        sol = model.solve();
        result.objective = sol.objective;
        if (params.observer) params.observer(model, sol, it);
      }
      break;
    }
    std::vector<Column> fresh;
    fresh.reserve(scan.columns.size());
    for (auto& priced : scan.columns) fresh.push_back(std::move(priced.column));
    model.add_columns(fresh);
  }
  result.time_s = elapsed();
  result.pool_size = static_cast<int>(model.pool().size());
  return result;
}

namespace {

constexpr double kWeightEps = 1e-9;

using ThetaMap = std::map<std::pair<int, std::vector<int>>, double>;

void add_weight(ThetaMap& theta, int facility, std::vector<int> customers,
                double delta) {
  if (customers.empty()) return;  // removal emptied the pattern; mass vanishes
  theta[{facility, std::move(customers)}] += delta;
}

}  // namespace

CoverSolution repair(const Instance& instance, const RmpSolution& solution,
                     const RmpModel& model) {
  for (double a : solution.artificial) {
    if (a > kWeightEps) {
      throw RepairError(
          "artificial column active: the pool cannot cover the instance yet");
    }
  }

  ThetaMap theta;
  for (std::size_t k = 0; k < solution.theta.size(); ++k) {
    if (solution.theta[k] > 0.0) {
      const Column& col = model.pool()[k];
      theta[{col.facility, col.customers}] += solution.theta[k];
    }
  }

  std::map<std::pair<int, int>, double> omega;
  for (std::size_t k = 0; k < solution.omega.size(); ++k) {
    if (solution.omega[k] > kWeightEps) {
      const auto& pair = model.swaps().pairs[k];
      omega[{pair.source, pair.target}] += solution.omega[k];
    }
  }

  // Rebate mass: move weight onto the column with the over-covered customer
  // removed.  Drained before the swap mass so that a swap whose target is
  // currently over-covered still finds a donor without the target, and hence
  // genuinely restores the target's coverage.  A removal without a donor is
  // deferred: the pending swap inflow will cover its customer first.
  std::vector<std::vector<double>> xi = solution.xi;
  auto drain_xi = [&](bool required) {
    for (int u = 0; u < static_cast<int>(xi.size()); ++u) {
      for (std::size_t level = 0; level < xi[u].size(); ++level) {
        const double sigma = model.ladders()[u].levels[level];
        while (xi[u][level] > kWeightEps) {
          ThetaMap::iterator donor = theta.end();
          for (auto it = theta.begin(); it != theta.end(); ++it) {
            if (it->second <= kWeightEps) continue;
            const auto& customers = it->first.second;
            if (!std::binary_search(customers.begin(), customers.end(), u)) continue;
            const double rebate = instance.cost[it->first.first][u];
            if (rebate < sigma) continue;  // would raise the cost
            if (round_rebate(model.ladders()[u], rebate) == sigma) {
              donor = it;
              break;
            }
            if (donor == theta.end()) donor = it;
          }
          if (donor == theta.end()) {
            if (required) {
              throw RepairError(
                  "no covering column available for a removal transfer");
            }
            break;
          }
          const double delta = std::min(xi[u][level], donor->second);
          const int facility = donor->first.first;
          std::vector<int> customers = donor->first.second;
          donor->second -= delta;
          xi[u][level] -= delta;
          customers.erase(std::find(customers.begin(), customers.end(), u));
          add_weight(theta, facility, std::move(customers), delta);
        }
      }
    }
  };
  drain_xi(false);

  // Smooth mass next: cancel opposite pairs, contract chains through the
  // triangle pair, or transfer weight onto swapped columns.
  long guard = 1000L +
               16L * (static_cast<long>(instance.num_customers()) *
                          instance.num_customers() +
                      static_cast<long>(solution.theta.size()));
  while (true) {
    if (--guard < 0) throw RepairError("swap elimination did not terminate");
    auto active = omega.end();
    auto chained = omega.end();  // an active pair whose source has inflow
    for (auto it = omega.begin(); it != omega.end(); ++it) {
      if (it->second <= kWeightEps) continue;
      bool has_inflow = false;
      for (auto jt = omega.begin(); jt != omega.end(); ++jt) {
        if (jt->second > kWeightEps && jt->first.second == it->first.first) {
          has_inflow = true;
          break;
        }
      }
      if (!has_inflow) {
        active = it;
        break;
      }
      if (chained == omega.end()) chained = it;
    }
    if (active == omega.end() && chained == omega.end()) break;

    if (active == omega.end()) {
      // Every active source has inflow: contract one link of the chain.
      const auto [u, v] = chained->first;
      auto feeder = omega.end();
      for (auto jt = omega.begin(); jt != omega.end(); ++jt) {
        if (jt->second > kWeightEps && jt->first.second == u) {
          feeder = jt;
          break;
        }
      }
      const double delta = std::min(chained->second, feeder->second);
      chained->second -= delta;
      feeder->second -= delta;
      if (feeder->first.first != v) {
        // Triangle pair (t-, s+); its penalty from the same max formula
        // obeys the triangle inequality, so cost never increases.
        omega[{feeder->first.first, v}] += delta;
      }
      continue;
    }

    const auto [u, v] = active->first;
    // A column that covers u and, preferably, not v.
    ThetaMap::iterator pure = theta.end();
    ThetaMap::iterator fallback = theta.end();
    for (auto it = theta.begin(); it != theta.end(); ++it) {
      if (it->second <= kWeightEps) continue;
      const auto& customers = it->first.second;
      if (!std::binary_search(customers.begin(), customers.end(), u)) continue;
      const bool covers_v = std::binary_search(customers.begin(), customers.end(), v);
      if (!covers_v) {
        pure = it;
        break;
      }
      if (fallback == theta.end()) fallback = it;
    }
    if (pure == theta.end()) {
      // Every donor already covers v, so a swap cannot restore v's coverage.
      // If v itself has outflow, contract (u,v)+(v,t) into (u,t); the
      // penalties obey the triangle inequality, so cost never increases.
      auto onward = omega.end();
      for (auto jt = omega.begin(); jt != omega.end(); ++jt) {
        if (jt->second > kWeightEps && jt->first.first == v) {
          onward = jt;
          break;
        }
      }
      if (onward != omega.end()) {
        const double delta = std::min(active->second, onward->second);
        const int t = onward->first.second;
        active->second -= delta;
        onward->second -= delta;
        if (t != u) omega[{u, t}] += delta;
        continue;
      }
    }
    ThetaMap::iterator donor = pure != theta.end() ? pure : fallback;
    if (donor == theta.end()) {
      throw RepairError("no covering column available for a swap transfer");
    }
    const double delta = std::min(active->second, donor->second);
    const int facility = donor->first.first;
    std::vector<int> customers = donor->first.second;
    donor->second -= delta;
    active->second -= delta;
    customers.erase(std::find(customers.begin(), customers.end(), u));
    if (!std::binary_search(customers.begin(), customers.end(), v)) {
      customers.insert(std::upper_bound(customers.begin(), customers.end(), v), v);
    }
    add_weight(theta, facility, std::move(customers), delta);
  }

  // Removals deferred past the swap phase must succeed now.
  drain_xi(true);

  CoverSolution cover;
  std::vector<double> coverage(instance.num_customers(), 0.0);
  std::vector<double> usage(instance.num_facilities(), 0.0);
  for (const auto& [key, weight] : theta) {
    if (weight <= kWeightEps) continue;
    Column col = make_column(instance, key.first, key.second);
    for (int u : col.customers) coverage[u] += weight;
    usage[col.facility] += weight;
    cover.objective += col.cost * weight;
    cover.patterns.emplace_back(std::move(col), weight);
  }
  for (double c : coverage) {
    if (c < 1.0 - 1e-9) throw RepairError("repaired solution under-covers a customer");
  }
  for (double used : usage) {
    if (used > 1.0 + 1e-9) throw RepairError("repaired solution overuses a facility");
  }
  return cover;
}

std::vector<GapPoint> extract_gap_trace(const CgResult& result) {
  if (result.trace.empty()) {
    throw std::invalid_argument("empty trace");
  }
  std::vector<GapPoint> gaps;
  gaps.reserve(result.trace.size());
  for (const auto& point : result.trace) {
    const double denom = std::max(std::abs(point.ub), 1e-12);
    gaps.push_back({point.time_s, point.iteration,
                    (point.ub - point.best_lb) / denom});
  }
  return gaps;
}

void write_trace_csv(std::ostream& out, const CgResult& result) {
  out << "iteration,time_s,ub,lb,best_lb,cols_added,doi_activity\n";
  for (const auto& p : result.trace) {
    out << p.iteration << "," << format_double(p.time_s) << ","
        << format_double(p.ub) << "," << format_double(p.lb) << ","
        << format_double(p.best_lb) << "," << p.cols_added << ","
        << format_double(p.doi_activity) << "\n";
  }
}

}  // namespace cgdoi
