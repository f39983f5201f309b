#include "cgdoi/rmp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cgdoi {

double RmpSolution::doi_activity() const {
  double total = 0.0;
  for (double w : omega) total += w;
  for (const auto& levels : xi) {
    for (double x : levels) total += x;
  }
  return total;
}

RmpModel::RmpModel(const Instance& instance, DoiConfig config, SwapSet swaps,
                   std::vector<RebateLadder> ladders)
    : instance_(instance),
      config_(config),
      swaps_(std::move(swaps)),
      ladders_(std::move(ladders)) {
  if (config_.uses_swaps() &&
      swaps_.outgoing.size() != static_cast<std::size_t>(instance_.num_customers())) {
    throw std::invalid_argument("smooth variant requires a swap set");
  }
  if (!config_.uses_swaps() && !swaps_.pairs.empty()) {
    throw std::invalid_argument("swap set given but variant has no smooth part");
  }
  if (config_.uses_rebates() &&
      ladders_.size() != static_cast<std::size_t>(instance_.num_customers())) {
    throw std::invalid_argument("flexible variant requires one ladder per customer");
  }
  if (!config_.uses_rebates() && !ladders_.empty()) {
    throw std::invalid_argument("ladders given but variant has no flexible part");
  }

  double max_fixed = 0.0, reach = 0.0;
  for (const auto& f : instance_.facilities) max_fixed = std::max(max_fixed, f.fixed_cost);
  for (int u = 0; u < instance_.num_customers(); ++u) {
    double worst = 0.0;
    for (int i = 0; i < instance_.num_facilities(); ++i) {
      worst = std::max(worst, instance_.cost[i][u]);
    }
    reach += worst;
  }
  artificial_cost_ = 2.0 * (max_fixed + reach);

  rebuild_lp();
}

int RmpModel::rebate_level(int u, double sigma) const {
  const auto& levels = ladders_[u].levels;
  auto it = std::upper_bound(levels.begin(), levels.end(), sigma);
  return static_cast<int>(std::distance(levels.begin(), std::prev(it)));
}

void RmpModel::append_theta_var(const Column& column) {
  const int var = lp_.add_var(column.cost);
  theta_var_.push_back(var);
  for (int u : column.customers) {
    lp_.rows[cover_row_[u]].coeffs.push_back({var, 1.0});
  }
  lp_.rows[convexity_row_[column.facility]].coeffs.push_back({var, 1.0});
  if (config_.uses_rebates()) {
    for (int u : column.customers) {
      const double sigma = compute_rebate(instance_, column, u);
      lp_.rows[bound_row_[u][rebate_level(u, sigma)]].coeffs.push_back({var, -1.0});
    }
  }
}

void RmpModel::rebuild_lp() {
  const int n = instance_.num_customers();
  const int m = instance_.num_facilities();
  lp_ = LpProblem{};
  basis_ = LpBasis{};

  cover_row_.resize(n);
  convexity_row_.resize(m);
  artificial_var_.resize(n);
  omega_var_.clear();
  xi_var_.assign(n, {});
  bound_row_.assign(n, {});
  theta_var_.clear();

  for (int u = 0; u < n; ++u) {
    artificial_var_[u] = lp_.add_var(artificial_cost_);
  }
  for (int u = 0; u < n; ++u) {
    cover_row_[u] = lp_.add_row(RowSense::ge, 1.0, {{artificial_var_[u], 1.0}});
  }
  for (int i = 0; i < m; ++i) {
    convexity_row_[i] = lp_.add_row(RowSense::le, 1.0, {});
  }
  if (config_.uses_swaps()) {
    for (const auto& pair : swaps_.pairs) {
      const int var = lp_.add_var(pair.penalty);
      omega_var_.push_back(var);
      lp_.rows[cover_row_[pair.target]].coeffs.push_back({var, 1.0});
      lp_.rows[cover_row_[pair.source]].coeffs.push_back({var, -1.0});
    }
  }
  if (config_.uses_rebates()) {
    for (int u = 0; u < n; ++u) {
      for (double level : ladders_[u].levels) {
        const int var = lp_.add_var(-level);
        const int row = lp_.add_row(RowSense::le, 0.0, {{var, 1.0}});
        lp_.rows[cover_row_[u]].coeffs.push_back({var, -1.0});
        xi_var_[u].push_back(var);
        bound_row_[u].push_back(row);
      }
    }
  }
  for (const auto& column : pool_.columns()) append_theta_var(column);
}

int RmpModel::add_columns(const std::vector<Column>& columns) {
  int added = 0;
  for (const auto& column : columns) {
    if (column.customers.empty()) {
      throw std::invalid_argument("column covers no customer");
    }
    const long capacity = instance_.facilities[column.facility].capacity;
    const long demand = column_demand(instance_, column);
    if (demand > capacity) {
      std::ostringstream msg;
      msg << "capacity-infeasible column: facility " << column.facility
          << " demand " << demand << " > capacity " << capacity;
      throw std::invalid_argument(msg.str());
    }
    if (column.cost != column_cost(instance_, column.facility, column.customers)) {
      throw std::invalid_argument("stored column cost disagrees with the instance");
    }
    if (pool_.insert(column)) {
      append_theta_var(column);
      ++added;
    }
  }
  return added;
}

void RmpModel::rebuild_ladders(std::vector<RebateLadder> ladders) {
  if (!config_.uses_rebates()) {
    throw std::logic_error("ladder rebuild on a variant without rebates");
  }
  if (ladders.size() != static_cast<std::size_t>(instance_.num_customers())) {
    throw std::invalid_argument("need one ladder per customer");
  }
  ladders_ = std::move(ladders);
  rebuild_lp();
}

RmpSolution RmpModel::solve() {
  LpSolution lp_sol =
      basis_.valid() ? solver_.resolve(lp_, basis_) : solver_.solve(lp_);
  if (lp_sol.status != LpStatus::optimal) {
    // Artificial columns make the RMP feasible and bounded by construction.
    throw std::logic_error("RMP solve did not reach optimality");
  }
  basis_ = lp_sol.basis;

  const int n = instance_.num_customers();
  const int m = instance_.num_facilities();
  RmpSolution sol;
  sol.status = lp_sol.status;
  sol.objective = lp_sol.objective;
  sol.warm_started = lp_sol.warm_started;
  sol.theta.resize(theta_var_.size());
  for (std::size_t k = 0; k < theta_var_.size(); ++k) {
    sol.theta[k] = lp_sol.primal[theta_var_[k]];
  }
  sol.omega.resize(omega_var_.size());
  for (std::size_t k = 0; k < omega_var_.size(); ++k) {
    sol.omega[k] = lp_sol.primal[omega_var_[k]];
  }
  sol.xi.resize(n);
  sol.gamma.resize(n);
  for (int u = 0; u < n; ++u) {
    sol.xi[u].resize(xi_var_[u].size());
    sol.gamma[u].resize(bound_row_[u].size());
    for (std::size_t k = 0; k < xi_var_[u].size(); ++k) {
      sol.xi[u][k] = lp_sol.primal[xi_var_[u][k]];
      sol.gamma[u][k] = std::min(0.0, lp_sol.dual[bound_row_[u][k]]);
    }
  }
  sol.artificial.resize(n);
  sol.alpha.resize(n);
  for (int u = 0; u < n; ++u) {
    sol.artificial[u] = lp_sol.primal[artificial_var_[u]];
    sol.alpha[u] = std::max(0.0, lp_sol.dual[cover_row_[u]]);
  }
  sol.beta.resize(m);
  for (int i = 0; i < m; ++i) {
    sol.beta[i] = std::min(0.0, lp_sol.dual[convexity_row_[i]]);
  }
  return sol;
}

double RmpModel::objective_without_doi() const {
  LpProblem pure;
  std::vector<int> cover(instance_.num_customers());
  std::vector<int> convexity(instance_.num_facilities());
  for (int u = 0; u < instance_.num_customers(); ++u) {
    const int var = pure.add_var(artificial_cost_);
    cover[u] = pure.add_row(RowSense::ge, 1.0, {{var, 1.0}});
  }
  for (int i = 0; i < instance_.num_facilities(); ++i) {
    convexity[i] = pure.add_row(RowSense::le, 1.0, {});
  }
  for (const auto& column : pool_.columns()) {
    const int var = pure.add_var(column.cost);
    for (int u : column.customers) pure.rows[cover[u]].coeffs.push_back({var, 1.0});
    pure.rows[convexity[column.facility]].coeffs.push_back({var, 1.0});
  }
  LpSolution sol = solver_.solve(pure);
  if (sol.status != LpStatus::optimal) {
    throw std::logic_error("theta-only re-solve did not reach optimality");
  }
  return sol.objective;
}

std::string RmpModel::export_pool() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& column : pool_.columns()) {
    out << column.facility << ":";
    for (int u : column.customers) out << " " << u;
    out << " # " << column.cost << "\n";
  }
  return out.str();
}

}  // namespace cgdoi
