// Command-line front end: solve single instances, generate dataset
// families, and run benchmark sweeps across stabilization variants.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cgdoi/bench.hpp"
#include "cgdoi/cg.hpp"
#include "cgdoi/doi.hpp"
#include "cgdoi/instance.hpp"

namespace fs = std::filesystem;
using namespace cgdoi;

namespace {

DoiVariant parse_variant(const std::string& name) {
  static const std::map<std::string, DoiVariant> table = {
      {"none", DoiVariant::none},
      {"s", DoiVariant::smooth},
      {"f", DoiVariant::flexible},
      {"sf", DoiVariant::both}};
  auto it = table.find(name);
  if (it == table.end()) throw CLI::ValidationError("unknown variant: " + name);
  return it->second;
}

std::string record_name(const std::string& variant) {
  return variant == "none" ? "standard" : variant;
}

Dialect parse_dialect(const std::string& name) {
  if (name == "holmberg") return Dialect::holmberg;
  if (name == "yang") return Dialect::yang;
  if (name == "canonical") return Dialect::canonical;
  throw CLI::ValidationError("unknown dialect: " + name);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string result_summary_json(const std::string& instance,
                                const std::string& variant, const CgResult& r) {
  std::ostringstream out;
  out << "{\n"
      << "  \"instance\": \"" << instance << "\",\n"
      << "  \"variant\": \"" << variant << "\",\n"
      << "  \"objective\": " << format_double(r.objective) << ",\n"
      << "  \"iterations\": " << r.iterations << ",\n"
      << "  \"time_s\": " << format_double(r.time_s) << ",\n"
      << "  \"converged\": " << (r.converged ? "true" : "false") << ",\n"
      << "  \"pool_size\": " << r.pool_size << "\n"
      << "}\n";
  return out.str();
}

struct CommonOpts {
  std::string variant = "none";
  std::string dialect = "canonical";
  long L = 1;
  int M = 20;
  double swap_fraction = 0.25;
  int price_limit = 20;
  int max_iter = 50000;
  std::string out_dir = ".";

  DoiConfig config() const {
    DoiConfig c;
    c.variant = parse_variant(variant);
    c.quantile_count = M;
    c.swap_fraction = swap_fraction;
    return c;
  }
  RunParams run_params() const {
    RunParams p;
    p.max_iterations = max_iter;
    p.price_limit = price_limit;
    return p;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--variant", opts.variant, "Stabilization variant: none|s|f|sf");
  cmd->add_option("--dialect", opts.dialect, "Instance dialect: holmberg|yang|canonical");
  cmd->add_option("--L", opts.L, "Capacity scaling factor")->check(CLI::PositiveNumber);
  cmd->add_option("--M", opts.M, "Rebate ladder quantile count");
  cmd->add_option("--swap-fraction", opts.swap_fraction, "Fraction of swap pairs kept");
  cmd->add_option("--price-limit", opts.price_limit, "Columns harvested per pricing pass");
  cmd->add_option("--max-iter", opts.max_iter, "Iteration cap");
  cmd->add_option("--out", opts.out_dir, "Output directory");
}

int cmd_solve(const std::string& path, const CommonOpts& opts) {
  Instance instance = parse_instance_file(path, parse_dialect(opts.dialect));
  if (instance.name.empty()) instance.name = fs::path(path).stem().string();
  if (opts.L > 1) instance = scale_capacities(instance, opts.L);

  CgResult result = run(instance, opts.config(), opts.run_params());

  fs::create_directories(opts.out_dir);
  const std::string stem = instance.name + "_" + opts.variant;
  write_file(fs::path(opts.out_dir) / (stem + ".json"),
             result_summary_json(instance.name, opts.variant, result));
  {
    std::ofstream trace(fs::path(opts.out_dir) / ("trace_" + stem + ".csv"));
    write_trace_csv(trace, result);
  }
  std::cout << "z " << format_double(result.objective) << " iterations "
            << result.iterations << " time_s " << format_double(result.time_s)
            << (result.converged ? "" : " (not converged)") << std::endl;
  return result.converged ? 0 : 3;
}

int cmd_generate(const std::string& family, const GeneratorParams& base,
                 int count, const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "manifest.json",
             generator_manifest(base, count, family));
  for (int k = 0; k < count; ++k) {
    GeneratorParams params = base;
    params.seed = base.seed + static_cast<std::uint64_t>(k);
    params.cost_mode = family == "structured" ? CostMode::euclidean_plane
                                              : CostMode::uniform_random;
    Instance inst = family == "structured" ? generate_structured(params)
                                           : generate_unstructured(params);
    std::ostringstream name;
    name << family << "_" << std::setw(3) << std::setfill('0') << k;
    inst.name = name.str();
    write_file(fs::path(out_dir) / (inst.name + ".txt"), write_canonical(inst));
  }
  std::cout << "wrote " << count << " " << family << " instances to " << out_dir
            << std::endl;
  return 0;
}

int cmd_bench(const std::vector<std::string>& paths,
              const std::vector<std::string>& variants,
              const std::vector<long>& l_factors, const CommonOpts& opts) {
  fs::create_directories(opts.out_dir);
  std::vector<BenchRecord> records;
  std::vector<std::vector<CgResult>> runs_per_variant(variants.size());
  bool all_converged = true;

  for (const auto& path : paths) {
    Instance base = parse_instance_file(path, parse_dialect(opts.dialect));
    if (base.name.empty()) base.name = fs::path(path).stem().string();
    for (long L : l_factors) {
      Instance instance = L > 1 ? scale_capacities(base, L) : base;
      std::string tag = base.name;
      if (l_factors.size() > 1 || L > 1) tag += "_L" + std::to_string(L);
      for (std::size_t v = 0; v < variants.size(); ++v) {
        CommonOpts vopts = opts;
        vopts.variant = variants[v];
        CgResult result = run(instance, vopts.config(), vopts.run_params());
        all_converged &= result.converged;
        records.push_back({tag, record_name(variants[v]), result.time_s,
                           result.iterations, result.objective, result.converged});
        {
          std::ofstream trace(fs::path(opts.out_dir) /
                              ("trace_" + tag + "_" + variants[v] + ".csv"));
          write_trace_csv(trace, result);
        }
        runs_per_variant[v].push_back(std::move(result));
      }
    }
  }

  std::sort(records.begin(), records.end(),
            [](const BenchRecord& a, const BenchRecord& b) {
              return std::tie(a.instance, a.variant) < std::tie(b.instance, b.variant);
            });
  {
    std::ofstream out(fs::path(opts.out_dir) / "results.csv");
    write_records_csv(out, records);
  }
  const bool has_standard =
      std::find(variants.begin(), variants.end(), "none") != variants.end();
  if (has_standard && variants.size() > 1) {
    SpeedupTable table = speedup_table(records);
    std::ofstream out(fs::path(opts.out_dir) / "speedup.csv");
    write_speedup_csv(out, table);
    std::cout << render_speedup_table(table);
  }
  std::vector<std::string> names;
  for (const auto& v : variants) names.push_back(record_name(v));
  {
    std::ofstream out(fs::path(opts.out_dir) / "aggregate_gap_iter.csv");
    write_aggregate_gap_iter_csv(out, names, runs_per_variant);
  }
  {
    std::ofstream out(fs::path(opts.out_dir) / "aggregate_gap_time.csv");
    write_aggregate_gap_time_csv(out, names, runs_per_variant);
  }
  if (!all_converged) {
    std::cerr << "warning: some runs hit the iteration cap (flagged in results.csv)"
              << std::endl;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Column-generation solver for SSCFLP with dual-optimal "
               "inequality stabilization"};
  app.require_subcommand(1);

  CommonOpts solve_opts;
  std::string solve_path;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance");
  solve_cmd->add_option("instance", solve_path, "Instance file")->required();
  add_common(solve_cmd, solve_opts);

  GeneratorParams gen_params;
  gen_params.n_customers = 250;
  gen_params.n_facilities = 50;
  gen_params.fixed_cost = 5.0;
  gen_params.capacity = 150;
  gen_params.demand_choices = {1, 2, 3, 4, 5};
  std::string gen_family = "structured";
  std::string gen_out = ".";
  int gen_count = 1;
  std::uint64_t gen_seed = 1;
  auto* gen_cmd = app.add_subcommand("generate", "Generate a dataset family");
  gen_cmd->add_option("family", gen_family, "structured|unstructured")
      ->check(CLI::IsMember({"structured", "unstructured"}));
  gen_cmd->add_option("--count", gen_count, "Number of instances");
  gen_cmd->add_option("--customers", gen_params.n_customers, "Customers per instance");
  gen_cmd->add_option("--facilities", gen_params.n_facilities, "Facilities per instance");
  gen_cmd->add_option("--fixed-cost", gen_params.fixed_cost, "Facility fixed cost");
  gen_cmd->add_option("--capacity", gen_params.capacity, "Facility capacity");
  gen_cmd->add_option("--demands", gen_params.demand_choices, "Demand choices");
  gen_cmd->add_option("--seed", gen_seed, "Base seed");
  gen_cmd->add_option("--out", gen_out, "Output directory");

  CommonOpts bench_opts;
  std::vector<std::string> bench_paths;
  std::vector<std::string> bench_variants = {"none", "s", "f", "sf"};
  std::vector<long> bench_l = {1};
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark sweep across variants");
  bench_cmd->add_option("instances", bench_paths, "Instance files")->required();
  bench_cmd->add_option("--variants", bench_variants, "Variants to run");
  bench_cmd->add_option("--L-list", bench_l, "Capacity scaling factors");
  add_common(bench_cmd, bench_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_path, solve_opts);
    if (gen_cmd->parsed()) {
      gen_params.seed = gen_seed;
      return cmd_generate(gen_family, gen_params, gen_count, gen_out);
    }
    if (bench_cmd->parsed()) {
      return cmd_bench(bench_paths, bench_variants, bench_l, bench_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
