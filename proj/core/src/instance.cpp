#include "cgdoi/instance.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "cgdoi/rng.hpp"

namespace cgdoi {

long Instance::total_capacity() const {
  long total = 0;
  for (const auto& f : facilities) total += f.capacity;
  return total;
}

long Instance::total_demand() const {
  return std::accumulate(demands.begin(), demands.end(), 0L);
}

namespace {

// Pulls whitespace-separated tokens, skipping '#' comments, tracking the
// line and token position for diagnostics.
class Tokenizer {
 public:
  explicit Tokenizer(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    out.clear();
    int c;
    while ((c = in_.get()) != EOF) {
      if (c == '#') {
        capture_comment();
        continue;
      }
      if (c == '\n') {
        ++line_;
        continue;
      }
      if (std::isspace(c)) continue;
      break;
    }
    if (c == EOF) return false;
    out.push_back(static_cast<char>(c));
    while ((c = in_.get()) != EOF && !std::isspace(c) && c != '#') {
      out.push_back(static_cast<char>(c));
    }
    if (c == '#') capture_comment();
    if (c == '\n') ++line_;
    ++token_;
    return true;
  }

  double require_double(const char* what) {
    std::string tok;
    if (!next(tok)) {
      throw ParseError(std::string("unexpected end of input, expected ") + what,
                       line_, token_);
    }
    try {
      std::size_t pos = 0;
      double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(std::string("malformed ") + what + " '" + tok + "'",
                       line_, token_);
    }
  }

  long require_long(const char* what) {
    double v = require_double(what);
    long r = static_cast<long>(v);
    if (static_cast<double>(r) != v) {
      throw ParseError(std::string("expected integer ") + what, line_, token_);
    }
    return r;
  }

  void fail(const std::string& what) const { throw ParseError(what, line_, token_); }

  bool at_end() {
    std::string tok;
    return !next(tok);
  }

  const std::string& name() const { return name_; }

 private:
  void capture_comment() {
    std::string comment;
    int c;
    while ((c = in_.get()) != EOF && c != '\n') comment.push_back(static_cast<char>(c));
    if (c == '\n') ++line_;
    if (comment.rfind("name ", 0) == 0 && name_.empty()) {
      name_ = comment.substr(5);
    }
  }

  std::istream& in_;
  int line_ = 1;
  int token_ = 0;
  std::string name_;
};

}  // namespace

Instance parse_instance(std::istream& in, Dialect dialect) {
  Tokenizer tok(in);
  Instance inst;
  long n_fac = tok.require_long("facility count");
  long n_cus = tok.require_long("customer count");
  if (n_fac < 1) tok.fail("facility count must be positive");
  if (n_cus < 1) tok.fail("customer count must be positive");

  inst.facilities.resize(n_fac);
  for (auto& f : inst.facilities) {
    if (dialect == Dialect::canonical) {
      f.fixed_cost = tok.require_double("fixed cost");
      f.capacity = tok.require_long("capacity");
    } else {
      f.capacity = tok.require_long("capacity");
      f.fixed_cost = tok.require_double("fixed cost");
    }
    if (f.capacity < 1) tok.fail("negative or zero capacity");
    if (f.fixed_cost < 0) tok.fail("negative fixed cost");
  }
  inst.demands.resize(n_cus);
  for (auto& d : inst.demands) {
    d = tok.require_long("demand");
    if (d < 0) tok.fail("negative demand");
    if (d == 0) tok.fail("zero demand");
  }
  inst.cost.assign(n_fac, std::vector<double>(n_cus));
  for (auto& row : inst.cost) {
    for (auto& c : row) {
      c = tok.require_double("assignment cost");
      if (c < 0) tok.fail("negative assignment cost");
    }
  }
  if (!tok.at_end()) tok.fail("trailing tokens after cost matrix");
  inst.name = tok.name();

  auto violations = validate(inst);
  if (!violations.empty()) tok.fail(violations.front());
  return inst;
}

Instance parse_instance_file(const std::string& path, Dialect dialect) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return parse_instance(in, dialect);
}

std::string format_double(double v) {
  char buf[64];
  // 17 significant digits round-trip IEEE doubles exactly.
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::string write_canonical(const Instance& instance) {
  auto violations = validate(instance);
  if (!violations.empty()) {
    throw std::invalid_argument("cannot serialize invalid instance: " +
                                violations.front());
  }
  std::ostringstream out;
  if (!instance.name.empty()) out << "#name " << instance.name << "\n";
  out << "# facilities customers\n";
  out << instance.num_facilities() << " " << instance.num_customers() << "\n";
  out << "# per facility: fixed_cost capacity\n";
  for (const auto& f : instance.facilities) {
    out << format_double(f.fixed_cost) << " " << f.capacity << "\n";
  }
  out << "# demands\n";
  for (int u = 0; u < instance.num_customers(); ++u) {
    out << instance.demands[u] << (u + 1 == instance.num_customers() ? "\n" : " ");
  }
  out << "# cost matrix, one row per facility\n";
  for (const auto& row : instance.cost) {
    for (std::size_t u = 0; u < row.size(); ++u) {
      out << format_double(row[u]) << (u + 1 == row.size() ? "\n" : " ");
    }
  }
  return out.str();
}

std::vector<std::string> validate(const Instance& instance) {
  std::vector<std::string> violations;
  if (instance.facilities.empty()) violations.push_back("no facilities");
  if (instance.demands.empty()) violations.push_back("no customers");
  if (instance.cost.size() != instance.facilities.size()) {
    violations.push_back("dimension mismatch: cost rows != facilities");
  }
  for (const auto& row : instance.cost) {
    if (row.size() != instance.demands.size()) {
      violations.push_back("dimension mismatch: cost columns != customers");
      break;
    }
  }
  for (const auto& f : instance.facilities) {
    if (f.capacity < 1) violations.push_back("capacity below 1");
    if (f.fixed_cost < 0) violations.push_back("negative fixed cost");
  }
  for (long d : instance.demands) {
    if (d < 1) violations.push_back("demand below 1");
  }
  for (const auto& row : instance.cost) {
    for (double c : row) {
      if (!(c >= 0)) {
        violations.push_back("negative assignment cost");
        break;
      }
    }
  }
  if (violations.empty() && instance.total_capacity() < instance.total_demand()) {
    violations.push_back("aggregate capacity shortfall");
  }
  return violations;
}

namespace {

Instance generate_common(const GeneratorParams& params, bool structured) {
  if (params.n_customers < 1 || params.n_facilities < 1) {
    throw std::invalid_argument("generator needs at least one facility and customer");
  }
  if (params.demand_choices.empty()) {
    throw std::invalid_argument("demand_choices must be non-empty");
  }
  for (long d : params.demand_choices) {
    if (d < 1 || d > params.capacity) {
      throw std::invalid_argument("demand choices must lie in [1, capacity]");
    }
  }
  CounterRng rng(params.seed);
  Instance inst;
  inst.facilities.assign(params.n_facilities,
                         Facility{params.fixed_cost, params.capacity});
  inst.cost.assign(params.n_facilities,
                   std::vector<double>(params.n_customers));
  if (structured) {
    std::vector<std::pair<double, double>> fac(params.n_facilities);
    for (auto& p : fac) {
      p.first = rng.next_unit();
      p.second = rng.next_unit();
    }
    for (int u = 0; u < params.n_customers; ++u) {
      double x = rng.next_unit();
      double y = rng.next_unit();
      for (int i = 0; i < params.n_facilities; ++i) {
        inst.cost[i][u] = std::hypot(fac[i].first - x, fac[i].second - y);
      }
    }
  } else {
    for (auto& row : inst.cost) {
      for (auto& c : row) c = rng.next_open_unit();
    }
  }
  inst.demands.resize(params.n_customers);
  for (auto& d : inst.demands) {
    d = params.demand_choices[rng.next_index(params.demand_choices.size())];
  }
  if (inst.total_capacity() < inst.total_demand()) {
    throw std::runtime_error(
        "infeasible draw: aggregate demand exceeds aggregate capacity");
  }
  return inst;
}

}  // namespace

Instance generate_structured(const GeneratorParams& params) {
  if (params.cost_mode != CostMode::euclidean_plane) {
    throw std::invalid_argument("generate_structured requires euclidean_plane");
  }
  return generate_common(params, true);
}

Instance generate_unstructured(const GeneratorParams& params) {
  if (params.cost_mode != CostMode::uniform_random) {
    throw std::invalid_argument("generate_unstructured requires uniform_random");
  }
  return generate_common(params, false);
}

Instance scale_capacities(const Instance& instance, long L) {
  if (L < 1) throw std::invalid_argument("capacity factor must be >= 1");
  Instance scaled = instance;
  for (auto& f : scaled.facilities) f.capacity *= L;
  return scaled;
}

std::string generator_manifest(const GeneratorParams& params, int count,
                               const std::string& family) {
  std::ostringstream out;
  out << "{\n"
      << "  \"family\": \"" << family << "\",\n"
      << "  \"count\": " << count << ",\n"
      << "  \"n_customers\": " << params.n_customers << ",\n"
      << "  \"n_facilities\": " << params.n_facilities << ",\n"
      << "  \"fixed_cost\": " << format_double(params.fixed_cost) << ",\n"
      << "  \"capacity\": " << params.capacity << ",\n"
      << "  \"demand_choices\": [";
  for (std::size_t k = 0; k < params.demand_choices.size(); ++k) {
    out << params.demand_choices[k]
        << (k + 1 == params.demand_choices.size() ? "" : ", ");
  }
  out << "],\n"
      << "  \"cost_mode\": \""
      << (params.cost_mode == CostMode::euclidean_plane ? "euclidean-plane"
                                                        : "uniform-random")
      << "\",\n"
      << "  \"seed\": " << params.seed << "\n"
      << "}\n";
  return out.str();
}

}  // namespace cgdoi
