#include "cgdoi/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cgdoi/instance.hpp"

namespace cgdoi {

namespace {

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

SpeedupTable speedup_table(const std::vector<BenchRecord>& records) {
  std::set<std::string> instances;
  std::set<std::string> variant_set;
  std::map<std::pair<std::string, std::string>, const BenchRecord*> grid;
  for (const auto& r : records) {
    instances.insert(r.instance);
    variant_set.insert(r.variant);
    grid[{r.instance, r.variant}] = &r;
  }
  if (!variant_set.count("standard")) {
    throw std::invalid_argument("speedup table needs a 'standard' column");
  }

  SpeedupTable table;
  table.variants.push_back("standard");
  for (const auto& v : variant_set) {
    if (v != "standard") table.variants.push_back(v);
  }

  std::vector<std::string> missing;
  for (const auto& inst : instances) {
    for (const auto& v : table.variants) {
      if (!grid.count({inst, v})) missing.push_back(inst + "/" + v);
    }
  }
  if (!missing.empty()) {
    std::string msg = "missing benchmark cells:";
    for (const auto& cell : missing) msg += " " + cell;
    throw std::invalid_argument(msg);
  }

  for (const auto& inst : instances) {
    SpeedupTable::Row row;
    row.instance = inst;
    const double t_std = grid[{inst, "standard"}]->time_s;
    for (const auto& v : table.variants) {
      const double t = grid[{inst, v}]->time_s;
      row.time_s.push_back(t);
      row.speedup.push_back(t > 0 ? t_std / t : 1.0);
    }
    table.rows.push_back(std::move(row));
  }

  const std::size_t k = table.variants.size();
  table.mean.instance = "mean";
  table.median.instance = "median";
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> times, speedups;
    for (const auto& row : table.rows) {
      times.push_back(row.time_s[c]);
      speedups.push_back(row.speedup[c]);
    }
    double tsum = 0, ssum = 0;
    for (double t : times) tsum += t;
    for (double s : speedups) ssum += s;
    table.mean.time_s.push_back(tsum / times.size());
    table.mean.speedup.push_back(ssum / speedups.size());
    table.median.time_s.push_back(median_of(times));
    table.median.speedup.push_back(median_of(speedups));
  }
  return table;
}

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "instance,variant,time_s,iterations,objective,converged\n";
  for (const auto& r : records) {
    out << r.instance << "," << r.variant << "," << format_double(r.time_s) << ","
        << r.iterations << "," << format_double(r.objective) << ","
        << (r.converged ? 1 : 0) << "\n";
  }
}

void write_speedup_csv(std::ostream& out, const SpeedupTable& table) {
  out << "instance";
  for (const auto& v : table.variants) out << ",time_" << v;
  for (const auto& v : table.variants) {
    if (v != "standard") out << ",speedup_" << v;
  }
  out << "\n";
  auto emit = [&](const SpeedupTable::Row& row) {
    out << row.instance;
    for (double t : row.time_s) out << "," << format_double(t);
    for (std::size_t c = 0; c < table.variants.size(); ++c) {
      if (table.variants[c] != "standard") out << "," << format_double(row.speedup[c]);
    }
    out << "\n";
  };
  for (const auto& row : table.rows) emit(row);
  emit(table.mean);
  emit(table.median);
}

std::string render_speedup_table(const SpeedupTable& table) {
  std::ostringstream out;
  auto one_decimal = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return std::string(buf);
  };
  out << "instance";
  for (const auto& v : table.variants) out << "\ttime_" << v;
  for (const auto& v : table.variants) {
    if (v != "standard") out << "\tspeedup_" << v;
  }
  out << "\n";
  auto emit = [&](const SpeedupTable::Row& row) {
    out << row.instance;
    for (double t : row.time_s) out << "\t" << one_decimal(t);
    for (std::size_t c = 0; c < table.variants.size(); ++c) {
      if (table.variants[c] != "standard") out << "\t" << one_decimal(row.speedup[c]);
    }
    out << "\n";
  };
  for (const auto& row : table.rows) emit(row);
  emit(table.mean);
  emit(table.median);
  return out.str();
}

namespace {

std::vector<std::vector<GapPoint>> gap_traces(const std::vector<CgResult>& runs) {
  std::vector<std::vector<GapPoint>> traces;
  traces.reserve(runs.size());
  for (const auto& run : runs) traces.push_back(extract_gap_trace(run));
  return traces;
}

}  // namespace

void write_aggregate_gap_iter_csv(
    std::ostream& out, const std::vector<std::string>& variants,
    const std::vector<std::vector<CgResult>>& runs_per_variant) {
  out << "iteration";
  for (const auto& v : variants) out << ",mean_gap_" << v;
  out << "\n";
  int max_iter = 0;
  std::vector<std::vector<std::vector<GapPoint>>> all;
  for (const auto& runs : runs_per_variant) {
    all.push_back(gap_traces(runs));
    for (const auto& trace : all.back()) {
      max_iter = std::max(max_iter, trace.back().iteration);
    }
  }
  for (int it = 1; it <= max_iter; ++it) {
    out << it;
    for (const auto& traces : all) {
      double sum = 0.0;
      for (const auto& trace : traces) {
        // Carry the final gap forward once a run has converged.
        const auto& p = it - 1 < static_cast<int>(trace.size())
                            ? trace[it - 1]
                            : trace.back();
        sum += p.relative_gap;
      }
      out << "," << format_double(sum / traces.size());
    }
    out << "\n";
  }
}

void write_aggregate_gap_time_csv(
    std::ostream& out, const std::vector<std::string>& variants,
    const std::vector<std::vector<CgResult>>& runs_per_variant, int samples) {
  out << "time_s";
  for (const auto& v : variants) out << ",mean_gap_" << v;
  out << "\n";
  double horizon = 0.0;
  std::vector<std::vector<std::vector<GapPoint>>> all;
  for (const auto& runs : runs_per_variant) {
    all.push_back(gap_traces(runs));
    for (const auto& trace : all.back()) {
      horizon = std::max(horizon, trace.back().time_s);
    }
  }
  for (int k = 0; k <= samples; ++k) {
    const double t = horizon * k / samples;
    out << format_double(t);
    for (const auto& traces : all) {
      double sum = 0.0;
      for (const auto& trace : traces) {
        double gap = trace.front().relative_gap;
        for (const auto& p : trace) {
          if (p.time_s <= t) gap = p.relative_gap;
          else break;
        }
        sum += gap;
      }
      out << "," << format_double(sum / traces.size());
    }
    out << "\n";
  }
}

}  // namespace cgdoi
