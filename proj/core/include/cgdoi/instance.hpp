#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgdoi {

struct Facility {
  double fixed_cost = 0.0;
  long capacity = 0;
};

// SSCFLP instance: facilities with fixed costs and capacities, customers
// with integer demands, and a facility x customer assignment cost matrix.
// Immutable after construction; safe to share across threads.
struct Instance {
  std::string name;
  std::vector<Facility> facilities;
  std::vector<long> demands;
  std::vector<std::vector<double>> cost;  // cost[i][u]

  int num_facilities() const { return static_cast<int>(facilities.size()); }
  int num_customers() const { return static_cast<int>(demands.size()); }

  long total_capacity() const;
  long total_demand() const;
};

enum class Dialect { holmberg, yang, canonical };

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int token)
      : std::runtime_error(what + " (line " + std::to_string(line) +
                           ", token " + std::to_string(token) + ")"),
        line(line),
        token(token) {}
  int line;
  int token;
};

// Token-stream parser, whitespace-tolerant; '#' starts a comment that runs
// to end of line. Layouts:
//   holmberg/yang: "|I| |N|", then |I| lines "K_i f_i", then |N| demands,
//                  then the |I|x|N| cost matrix row-major.
//   canonical:     "|I| |N|", then |I| lines "f_i K_i", then |N| demands,
//                  then the cost matrix; an optional leading "#name <label>"
//                  comment carries the instance name.
// Yang costs are integer-valued in circulated files; the parser accepts
// reals in every dialect.
Instance parse_instance(std::istream& in, Dialect dialect);
Instance parse_instance_file(const std::string& path, Dialect dialect);

// Canonical serialization; parse_instance(write_canonical(x), canonical)
// reproduces x field-exactly (doubles printed with 17 significant digits).
// Throws std::invalid_argument on an invalid instance.
std::string write_canonical(const Instance& instance);

// Empty result means the instance satisfies all invariants.
std::vector<std::string> validate(const Instance& instance);

enum class CostMode { euclidean_plane, uniform_random };

struct GeneratorParams {
  int n_customers = 0;
  int n_facilities = 0;
  double fixed_cost = 0.0;
  long capacity = 0;
  std::vector<long> demand_choices;
  CostMode cost_mode = CostMode::euclidean_plane;
  std::uint64_t seed = 0;
};

// Facility and customer locations uniform on [0,1]^2, costs the untruncated
// Euclidean distances, demands uniform over demand_choices. Deterministic
// from the seed (see CounterRng). Throws if the drawn demands exceed the
// aggregate capacity.
Instance generate_structured(const GeneratorParams& params);

// Costs i.i.d. uniform on the open interval (0,1); everything else as
// generate_structured.
Instance generate_unstructured(const GeneratorParams& params);

// Identical instance with every capacity multiplied by L.
Instance scale_capacities(const Instance& instance, long L);

// Shortest decimal representation that parses back to the same double;
// the formatting rule used by every text format in the project.
std::string format_double(double v);

// JSON manifest describing a generator draw (params + seed).
std::string generator_manifest(const GeneratorParams& params, int count,
                               const std::string& family);

}  // namespace cgdoi
