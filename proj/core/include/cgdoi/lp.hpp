#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cgdoi {

enum class RowSense { le, ge, eq };

struct LpVar {
  double cost = 0.0;
  double upper = std::numeric_limits<double>::infinity();  // lower bound is 0
  std::string tag;
};

struct LpRow {
  RowSense sense = RowSense::ge;
  double rhs = 0.0;
  std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
  std::string tag;
};

// Dense minimization LP. Variables are nonnegative with an optional upper
// bound; rows carry their own sense and right-hand side.
struct LpProblem {
  std::vector<LpVar> vars;
  std::vector<LpRow> rows;

  int add_var(double cost,
              double upper = std::numeric_limits<double>::infinity(),
              std::string tag = {}) {
    vars.push_back({cost, upper, std::move(tag)});
    return static_cast<int>(vars.size()) - 1;
  }
  int add_row(RowSense sense, double rhs,
              std::vector<std::pair<int, double>> coeffs,
              std::string tag = {}) {
    rows.push_back({sense, rhs, std::move(coeffs), std::move(tag)});
    return static_cast<int>(rows.size()) - 1;
  }
  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

enum class LpStatus { optimal, infeasible, unbounded };

// Opaque basis descriptor for warm starts. Entries are stable variable ids
// that survive appending columns to the problem.
struct LpBasis {
  std::vector<long> basic_ids;
  int n_rows = 0;
  bool valid() const { return !basic_ids.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> primal;  // per variable
  std::vector<double> dual;    // per row; >=0 for ge rows, <=0 for le rows
  LpBasis basis;
  bool warm_started = false;
  int pivots = 0;
};

struct LpTolerances {
  double feas = 1e-9;
  double obj = 1e-7;   // relative, primal vs dual objective
  double pivot = 1e-9;
  double opt = 1e-9;   // reduced-cost threshold
};

class LpNumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Primal simplex over a dense basis inverse. Dantzig pricing with Bland's
// rule engaged after a long degenerate streak; refactorization every 100
// pivots. Phase 1 uses artificial variables.
class LpSolver {
 public:
  LpTolerances tol;

  LpSolution solve(const LpProblem& problem) const;
  // Warm start from a basis of a structurally compatible earlier problem
  // (same rows, superset of columns). Falls back to a cold solve when the
  // basis cannot be applied; LpSolution::warm_started records which path ran.
  LpSolution resolve(const LpProblem& problem, const LpBasis& basis) const;
};

// CPLEX LP text format, for external cross-checking.
std::string write_lp_format(const LpProblem& problem);

}  // namespace cgdoi
