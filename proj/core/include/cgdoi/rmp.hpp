#pragma once

#include <string>
#include <vector>

#include "cgdoi/column.hpp"
#include "cgdoi/doi.hpp"
#include "cgdoi/instance.hpp"
#include "cgdoi/lp.hpp"

namespace cgdoi {

struct RmpSolution {
  double objective = 0.0;
  std::vector<double> theta;       // per pool column
  std::vector<double> omega;       // per swap pair
  std::vector<std::vector<double>> xi;  // [customer][ladder level]
  std::vector<double> artificial;  // per customer
  std::vector<double> alpha;       // cover-row duals, >= 0
  std::vector<double> beta;        // convexity-row duals, <= 0
  std::vector<std::vector<double>> gamma;  // bound-row duals, <= 0
  LpStatus status = LpStatus::optimal;
  bool warm_started = false;

  double doi_activity() const;  // sum of omega plus sum of xi
};

// Restricted master problem for any stabilization variant. Rows: one >=1
// cover row per customer, one <=1 convexity row per facility, and (for the
// rebate variants) one <=0 bound row per (customer, ladder level). One
// artificial high-cost column per customer keeps the LP feasible from the
// start. Single-owner mutable; snapshots of pool and solutions may be
// shared.
class RmpModel {
 public:
  RmpModel(const Instance& instance, DoiConfig config, SwapSet swaps = {},
           std::vector<RebateLadder> ladders = {});

  // Appends capacity-feasible, non-duplicate columns; returns how many were
  // actually inserted. Throws on a capacity-infeasible column.
  int add_columns(const std::vector<Column>& columns);

  // Drops every xi variable and bound row and reconstructs them from the new
  // ladders; theta and omega survive but the warm-start basis does not.
  void rebuild_ladders(std::vector<RebateLadder> ladders);

  RmpSolution solve();

  // Objective after fixing every omega and xi to zero (theta-only re-solve).
  double objective_without_doi() const;

  const Instance& instance() const { return instance_; }
  const DoiConfig& config() const { return config_; }
  const ColumnPool& pool() const { return pool_; }
  const SwapSet& swaps() const { return swaps_; }
  const std::vector<RebateLadder>& ladders() const { return ladders_; }
  const LpProblem& lp() const { return lp_; }
  double artificial_cost() const { return artificial_cost_; }

  // Canonical text listing of the pool (facility, customers, cost).
  std::string export_pool() const;

 private:
  void rebuild_lp();
  void append_theta_var(const Column& column);
  int rebate_level(int u, double sigma) const;

  const Instance& instance_;
  DoiConfig config_;
  SwapSet swaps_;
  std::vector<RebateLadder> ladders_;
  ColumnPool pool_;
  LpProblem lp_;
  LpSolver solver_;
  LpBasis basis_;
  double artificial_cost_ = 0.0;

  // Row and variable maps into lp_.
  std::vector<int> cover_row_;           // per customer
  std::vector<int> convexity_row_;       // per facility
  std::vector<std::vector<int>> bound_row_;  // [customer][level]
  std::vector<int> artificial_var_;      // per customer
  std::vector<int> omega_var_;           // per swap pair
  std::vector<std::vector<int>> xi_var_;     // [customer][level]
  std::vector<int> theta_var_;           // per pool column
};

}  // namespace cgdoi
