#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cgdoi/doi.hpp"
#include "cgdoi/instance.hpp"
#include "cgdoi/rmp.hpp"

namespace cgdoi {

struct TracePoint {
  int iteration = 0;
  double time_s = 0.0;
  double ub = 0.0;       // RMP objective
  double lb = 0.0;       // Lagrangian bound of this iteration
  double best_lb = 0.0;
  int cols_added = 0;
  double doi_activity = 0.0;  // sum omega + sum xi
};

struct CgResult {
  double objective = 0.0;  // final LP bound z
  int iterations = 0;
  double time_s = 0.0;
  bool converged = false;  // empty pricing pass certified
  std::vector<TracePoint> trace;
  int pool_size = 0;
};

struct RunParams {
  int max_iterations = 50000;
  int price_limit = 20;
  // Called after every RMP solve; used by tests to grab mid-run snapshots.
  std::function<void(const RmpModel&, const RmpSolution&, int iteration)> observer;
};

// Full column-generation loop for any variant: solve, trace, periodic ladder
// rebuilds, pricing on (alpha, beta) only, stop on an empty pricing pass.
CgResult run(const Instance& instance, const DoiConfig& config,
             const RunParams& params = {});

// rmp_objective plus the sum over facilities of min(0, min reduced cost);
// valid because each facility contributes at most one pattern.
double lagrangian_lower_bound(double rmp_objective,
                              const std::vector<double>& min_reduced_costs);

// Pure covering solution: nonnegative pattern weights satisfying the cover
// and convexity rows without any DOI variable.
struct CoverSolution {
  std::vector<std::pair<Column, double>> patterns;
  double objective = 0.0;
};

class RepairError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Converts a stabilized primal solution into a pure covering solution of no
// greater cost: active omega mass is removed by pair cancellation and swap
// transfers, active xi mass by removal transfers. Errors if artificial
// columns carry weight.
CoverSolution repair(const Instance& instance, const RmpSolution& solution,
                     const RmpModel& model);

struct GapPoint {
  double time_s = 0.0;
  int iteration = 0;
  double relative_gap = 0.0;
};

std::vector<GapPoint> extract_gap_trace(const CgResult& result);

// CSV with header iteration,time_s,ub,lb,best_lb,cols_added,doi_activity.
void write_trace_csv(std::ostream& out, const CgResult& result);

}  // namespace cgdoi
