#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cgdoi/cg.hpp"

namespace cgdoi {

// One CG run inside a benchmark sweep.
struct BenchRecord {
  std::string instance;
  std::string variant;  // "standard", "s", "f", "sf"
  double time_s = 0.0;
  int iterations = 0;
  double objective = 0.0;
  bool converged = false;
};

struct SpeedupTable {
  std::vector<std::string> variants;  // "standard" first
  struct Row {
    std::string instance;
    std::vector<double> time_s;   // per variant
    std::vector<double> speedup;  // time_standard / time_v
  };
  std::vector<Row> rows;
  Row mean;    // column means (speedups averaged per instance)
  Row median;  // column medians
};

// Builds the table from a rectangular instance x variant grid; throws with
// the missing (instance, variant) cells listed otherwise.
SpeedupTable speedup_table(const std::vector<BenchRecord>& records);

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);

// Full-precision CSV of the table.
void write_speedup_csv(std::ostream& out, const SpeedupTable& table);

// Human-readable rendering with values rounded to one decimal.
std::string render_speedup_table(const SpeedupTable& table);

// Mean relative gap across a set of runs per variant, one row per
// iteration; converged runs carry their final gap forward.
void write_aggregate_gap_iter_csv(
    std::ostream& out, const std::vector<std::string>& variants,
    const std::vector<std::vector<CgResult>>& runs_per_variant);

// Same, sampled on a uniform time grid.
void write_aggregate_gap_time_csv(
    std::ostream& out, const std::vector<std::string>& variants,
    const std::vector<std::vector<CgResult>>& runs_per_variant, int samples = 200);

}  // namespace cgdoi
