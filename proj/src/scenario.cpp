#include "ckmig/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ckmig/errors.hpp"
#include "ckmig/periodic.hpp"
#include "ckmig/units.hpp"

namespace ckmig {

Scenario default_grid(std::string name, const CostParams& costs) {
  return {std::move(name),
          costs,
          {units::kDay, units::kWeek, units::kMonth, units::kYear},
          {10'000, 100'000, 1'000'000},
          {1e-4, 1e-6}};
}

namespace {

double read_duration(const nlohmann::json& value) {
  if (value.is_number()) {
    const double minutes = value.get<double>();
    detail::require(minutes > 0.0, "preset MTBF must be positive");
    return minutes;
  }
  return units::parse_duration(value.get<std::string>());
}

Scenario read_preset(const nlohmann::json& entry) {
  CostParams costs;
  costs.C = entry.at("C").get<double>();
  costs.R = entry.value("R", costs.C);
  costs.D = entry.at("D").get<double>();
  costs.M = entry.at("M").get<double>();
  costs.validate();
  Scenario s = default_grid(entry.at("name").get<std::string>(), costs);
  if (entry.contains("mtbf")) {
    s.mtbfs.clear();
    for (const auto& v : entry.at("mtbf")) s.mtbfs.push_back(read_duration(v));
  }
  if (entry.contains("N")) s.machines = entry.at("N").get<std::vector<std::int64_t>>();
  if (entry.contains("epsilon")) s.epsilons = entry.at("epsilon").get<std::vector<double>>();
  return s;
}

}  // namespace

std::vector<Scenario> parse_presets(const std::string& json_text) {
  std::vector<Scenario> presets;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    for (const auto& entry : doc.at("presets")) presets.push_back(read_preset(entry));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed preset file: ") + e.what());
  }
  return presets;
}

std::vector<Scenario> load_presets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open preset file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_presets(text.str());
}

const Scenario* find_preset(const std::vector<Scenario>& presets, const std::string& name) {
  auto it = std::find_if(presets.begin(), presets.end(),
                         [&](const Scenario& s) { return s.name == name; });
  return it == presets.end() ? nullptr : &*it;
}

bool ScenarioTable::all_feasible() const {
  return std::all_of(cells.begin(), cells.end(), [](const ScenarioCell& c) { return c.feasible; });
}

ScenarioTable run_scenario(const Scenario& scenario, Workload workload, double p1,
                           SpareMethod method) {
  scenario.costs.validate();
  ScenarioTable table{scenario, workload, p1, method, {}, {}};
  if (!scenario.costs.migration_sensible()) {
    table.warnings.push_back(
        "M >= C + D + R: migrating costs at least as much as checkpoint + reboot + "
        "recovery, so the failing machine is better used as its own spare");
  }
  for (double mu : scenario.mtbfs) {
    const auto params = availability_params(mu, scenario.costs.M, scenario.costs.D);
    for (std::int64_t N : scenario.machines) {
      std::optional<JobMix> mix;
      double rho_cp = 0.0;
      if (workload == Workload::Parallel) {
        mix = solve_job_mix_for_machines(N, p1);
        rho_cp = throughput_checkpoint_parallel(*mix, FailureModel::exponential(mu),
                                                scenario.costs);
      } else {
        rho_cp = throughput_checkpoint_sequential(N, mu, scenario.costs);
      }
      for (double eps : scenario.epsilons) {
        ScenarioCell cell{mu, N, eps, true, 0, 0.0, rho_cp, 0.0, 0.0};
        try {
          const SpareSizing sizing = min_spares(N, params, eps, method);
          cell.spares = sizing.m;
          cell.achieved_success = sizing.achieved_success;
          cell.rho_m = mix ? throughput_migration_parallel(*mix, mu, scenario.costs.M, sizing.m)
                           : throughput_migration_sequential(N, sizing.m, mu, scenario.costs.M);
          cell.improvement_pct = improvement_pct(cell.rho_m, cell.rho_cp);
        } catch (const InfeasibleError&) {
          cell.feasible = false;
        }
        table.cells.push_back(cell);
      }
    }
  }
  return table;
}

YieldTable run_yield_table(double C, double R, double D, double p1,
                           std::vector<std::int64_t> machines, std::vector<double> mtbfs) {
  if (machines.empty()) {
    for (int Z = 8; Z <= 20; Z += 3) machines.push_back(std::int64_t{1} << Z);
  }
  if (mtbfs.empty()) mtbfs = {units::kMonth, units::kYear};
  YieldTable table{C, R, D, p1, std::move(machines), std::move(mtbfs), {}};
  for (std::int64_t N : table.machines) {
    const JobMix mix = solve_job_mix_for_machines(N, p1);
    for (double mu : table.mtbfs) {
      table.cells.push_back({N, mu, yield_parallel(mix, C, mu, R, D) / static_cast<double>(N)});
    }
  }
  return table;
}

}  // namespace ckmig
