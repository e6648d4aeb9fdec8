#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ckmig/job_mix.hpp"
#include "ckmig/spares.hpp"
#include "ckmig/throughput.hpp"

namespace ckmig {

struct Scenario {
  std::string name;
  CostParams costs;
  std::vector<double> mtbfs;           // rows
  std::vector<std::int64_t> machines;  // column groups
  std::vector<double> epsilons;
};

// The grid shared by all published scenarios: mu in {1d, 1w, 1mo, 1y},
// N in {1e4, 1e5, 1e6}, epsilon in {1e-4, 1e-6}.
Scenario default_grid(std::string name, const CostParams& costs);

// Reads presets from a JSON document of the form
//   {"presets": [{"name": ..., "C": ..., "R": ..., "D": ..., "M": ...,
//                 "mtbf": [...], "N": [...], "epsilon": [...]}]}
// Grid keys are optional and default to default_grid(). mtbf entries may be
// numbers (minutes) or duration strings ("1d", "1y").
std::vector<Scenario> load_presets(const std::filesystem::path& path);
std::vector<Scenario> parse_presets(const std::string& json_text);
const Scenario* find_preset(const std::vector<Scenario>& presets,
                            const std::string& name);

enum class Workload { Sequential, Parallel };

struct ScenarioCell {
  double mtbf = 0.0;
  std::int64_t N = 0;
  double epsilon = 0.0;
  bool feasible = true;
  std::int64_t spares = 0;
  double achieved_success = 0.0;
  double rho_cp = 0.0;
  double rho_m = 0.0;
  double improvement_pct = 0.0;
};

struct ScenarioTable {
  Scenario scenario;
  Workload workload = Workload::Sequential;
  double p1 = kDefaultSequentialFraction;
  SpareMethod method = SpareMethod::Exact;
  std::vector<ScenarioCell> cells;  // row-major: mtbf, then (N, epsilon)
  std::vector<std::string> warnings;

  bool all_feasible() const;
};

ScenarioTable run_scenario(const Scenario& scenario, Workload workload,
                           double p1 = kDefaultSequentialFraction,
                           SpareMethod method = SpareMethod::Exact);

struct YieldCell {
  std::int64_t N = 0;
  double mtbf = 0.0;
  double yield = 0.0;  // rho / N
};

struct YieldTable {
  double C = 1.0, R = 1.0, D = 1.0;
  double p1 = kDefaultSequentialFraction;
  std::vector<std::int64_t> machines;  // rows
  std::vector<double> mtbfs;           // columns
  std::vector<YieldCell> cells;        // row-major
};

// Defaults: C = R = D = 1, p1 = 0.25, N in {2^8, 2^11, 2^14, 2^17, 2^20},
// mu in {1 month, 1 year}.
YieldTable run_yield_table(double C = 1.0, double R = 1.0, double D = 1.0,
                           double p1 = kDefaultSequentialFraction,
                           std::vector<std::int64_t> machines = {},
                           std::vector<double> mtbfs = {});

}  // namespace ckmig
