// ckmig: checkpointing vs. migration models on failure-prone clusters.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "ckmig/errors.hpp"
#include "ckmig/failure_models.hpp"
#include "ckmig/periodic.hpp"
#include "ckmig/report.hpp"
#include "ckmig/scenario.hpp"
#include "ckmig/simulator.hpp"
#include "ckmig/spares.hpp"
#include "ckmig/units.hpp"

#ifndef CKMIG_DEFAULT_PRESETS
#define CKMIG_DEFAULT_PRESETS "data/presets.json"
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;

using ckmig::OutputFormat;

struct Output {
  std::string format = "table";
  std::string path;

  OutputFormat parsed() const { return ckmig::parse_output_format(format); }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw ckmig::DomainError("cannot write " + path);
    out << text;
  }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--format", format, "table, csv or json")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    cmd->add_option("--out", path, "write output to this file instead of stdout");
  }
};

std::vector<double> parse_durations(const std::vector<std::string>& texts) {
  std::vector<double> out;
  for (const auto& t : texts) out.push_back(ckmig::units::parse_duration(t));
  return out;
}

double parse_one_duration(const std::string& text) { return ckmig::units::parse_duration(text); }

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

ckmig::Workload parse_workload(const std::string& w) {
  return w == "par" || w == "parallel" ? ckmig::Workload::Parallel : ckmig::Workload::Sequential;
}

struct ScenarioArgs {
  std::string name;
  std::string presets = CKMIG_DEFAULT_PRESETS;
  std::vector<std::int64_t> machines;
  std::vector<std::string> mtbfs;
  std::vector<double> epsilons;
  std::optional<double> C, R, D, M;
  double p1 = ckmig::kDefaultSequentialFraction;
  std::string workload = "seq";
  std::string method = "exact";
  Output output;
};

int run_scenario_cmd(const ScenarioArgs& a) {
  ckmig::Scenario scenario;
  if (a.name == "custom") {
    if (!a.C || !a.D || !a.M) {
      throw ckmig::DomainError("custom scenario needs --C, --D and --M (--R defaults to --C)");
    }
    scenario = ckmig::default_grid("custom", {*a.C, a.R.value_or(*a.C), *a.D, *a.M});
  } else {
    const auto presets = ckmig::load_presets(a.presets);
    const auto* preset = ckmig::find_preset(presets, a.name);
    if (preset == nullptr) throw ckmig::DomainError("unknown preset '" + a.name + "'");
    scenario = *preset;
    if (a.C) scenario.costs.C = *a.C;
    if (a.R) scenario.costs.R = *a.R;
    if (a.D) scenario.costs.D = *a.D;
    if (a.M) scenario.costs.M = *a.M;
  }
  if (!a.machines.empty()) scenario.machines = a.machines;
  if (!a.mtbfs.empty()) scenario.mtbfs = parse_durations(a.mtbfs);
  if (!a.epsilons.empty()) scenario.epsilons = a.epsilons;

  const auto table = ckmig::run_scenario(scenario, parse_workload(a.workload), a.p1,
                                         ckmig::parse_spare_method(a.method));
  const auto format = a.output.parsed();
  if (format != OutputFormat::Table) warn(table.warnings);
  a.output.write(ckmig::render(table, format));
  if (!table.all_feasible()) {
    std::cerr << "error: some cells are infeasible under the " << ckmig::to_string(table.method)
              << " spare method\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

struct YieldArgs {
  double C = 1.0, R = 1.0, D = 1.0;
  double p1 = ckmig::kDefaultSequentialFraction;
  std::vector<std::int64_t> machines;
  std::vector<std::string> mtbfs;
  Output output;
};

int run_yield_cmd(const YieldArgs& a) {
  const auto table =
      ckmig::run_yield_table(a.C, a.R, a.D, a.p1, a.machines, parse_durations(a.mtbfs));
  a.output.write(ckmig::render(table, a.output.parsed()));
  return kExitOk;
}

struct SparesArgs {
  std::int64_t N = 0;
  std::string mtbf = "1d";
  double M = 1.0, D = 2.5;
  double epsilon = 1e-4;
  std::string method = "exact";
  Output output;
};

int run_spares_cmd(const SparesArgs& a) {
  const double mu = parse_one_duration(a.mtbf);
  const auto params = ckmig::availability_params(mu, a.M, a.D);
  const auto method = ckmig::parse_spare_method(a.method);
  const auto sizing = ckmig::min_spares(a.N, params, a.epsilon, method);
  switch (a.output.parsed()) {
    case OutputFormat::Json: {
      nlohmann::json j{{"N", a.N},          {"mu_minutes", mu},
                       {"M", a.M},          {"D", a.D},
                       {"u", params.u},     {"v", params.v},
                       {"epsilon", a.epsilon}, {"method", std::string(ckmig::to_string(method))},
                       {"spares", sizing.m}, {"achieved_success", sizing.achieved_success}};
      a.output.write(j.dump(2) + "\n");
      break;
    }
    case OutputFormat::Csv:
      a.output.write(fmt::format(
          "N,mu_minutes,M,D,u,v,epsilon,method,spares,achieved_success\n{},{},{},{},{},{},{},{},{},{}\n",
          a.N, mu, a.M, a.D, params.u, params.v, a.epsilon, ckmig::to_string(method), sizing.m,
          sizing.achieved_success));
      break;
    default:
      a.output.write(fmt::format(
          "N={} mtbf={} M={} D={}  v={:.6g}\nspares m = {} ({:.4f}% of N), success = {:.12f} >= "
          "1 - {:g} ({})\n",
          a.N, ckmig::format_duration(mu), a.M, a.D, params.v, sizing.m,
          100.0 * static_cast<double>(sizing.m) / static_cast<double>(a.N),
          sizing.achieved_success, a.epsilon, ckmig::to_string(method)));
  }
  return kExitOk;
}

struct PeriodicArgs {
  double C = 1.0, R = 1.0, D = 1.0;
  std::string mtbf = "1mo";
  std::optional<double> period;
  std::int64_t N = 1;
  Output output;
};

int run_periodic_cmd(const PeriodicArgs& a) {
  const double mu = parse_one_duration(a.mtbf);
  const double t_opt = ckmig::optimal_period(a.C, mu);
  const double T = a.period.value_or(t_opt);
  const auto w_min = ckmig::min_waste_extended(a.C, mu, a.R, a.D);
  std::optional<ckmig::FeasibilityThreshold> threshold;
  if (a.C + a.R + a.D > 0.0) threshold = ckmig::mtbf_feasibility_threshold(a.C, a.R, a.D);
  const bool have_T = T > 0.0;
  const double w_young = have_T ? ckmig::waste_young(a.C, T, mu) : 0.0;
  const double w_ext = have_T ? ckmig::waste_extended(a.C, T, mu, a.R, a.D) : (a.R + a.D) / mu;
  const double yield = ckmig::yield_independent(a.N, a.C, mu, a.R, a.D);

  nlohmann::json j{{"C", a.C},
                   {"R", a.R},
                   {"D", a.D},
                   {"mu_minutes", mu},
                   {"period", T},
                   {"t_opt", t_opt},
                   {"waste_young", w_young},
                   {"waste_extended", w_ext},
                   {"min_waste_unclamped", w_min.unclamped},
                   {"min_waste", w_min.clamped},
                   {"nu_b", threshold ? nlohmann::json(threshold->nu_b) : nlohmann::json(nullptr)},
                   {"mu_min", threshold ? nlohmann::json(threshold->mu_min) : nlohmann::json(nullptr)},
                   {"N", a.N},
                   {"yield_independent", yield}};
  switch (a.output.parsed()) {
    case OutputFormat::Json:
      a.output.write(j.dump(2) + "\n");
      break;
    case OutputFormat::Csv: {
      std::string header, row;
      for (const auto& [key, value] : j.items()) {
        header += (header.empty() ? "" : ",") + key;
        row += (row.empty() ? "" : ",") + (value.is_null() ? std::string() : value.dump());
      }
      a.output.write(header + "\n" + row + "\n");
      break;
    }
    default: {
      std::string text = fmt::format(
          "C={} R={} D={} mtbf={}\n"
          "T_opt            = {:.6g} min\n"
          "period T         = {:.6g} min\n"
          "waste (Young)    = {:.6g}\n"
          "waste (extended) = {:.6g}\n"
          "min waste        = {:.6g} (unclamped {:.6g})\n",
          a.C, a.R, a.D, ckmig::format_duration(mu), t_opt, T, w_young, w_ext, w_min.clamped,
          w_min.unclamped);
      if (threshold) {
        text += fmt::format("nu_b             = {:.6g} 1/sqrt(min), mu_min = {:.6g} min\n",
                            threshold->nu_b, threshold->mu_min);
      }
      text += fmt::format("yield (N={})      = {:.6g} ({:.2f}%)\n", a.N, yield,
                          100.0 * yield / static_cast<double>(a.N));
      a.output.write(text);
    }
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string policy = "checkpoint";
  std::int64_t N = 1000;
  std::string mtbf = "1d";
  std::optional<double> shape;
  double C = 25.0, R = 25.0, D = 2.5, M = 1.0;
  std::optional<std::int64_t> spares;
  double epsilon = 1e-4;
  std::optional<double> period;
  int job_log2 = 0;
  std::uint64_t seed = 1;
  int replications = 10;
  std::optional<std::string> horizon;
  unsigned threads = 0;
  Output output;
};

int run_simulate_cmd(const SimulateArgs& a) {
  const double mu = parse_one_duration(a.mtbf);
  ckmig::SimConfig cfg;
  cfg.N = a.N;
  cfg.failure_model = a.shape ? ckmig::FailureModel::weibull_with_mean(mu, *a.shape)
                              : ckmig::FailureModel::exponential(mu);
  cfg.costs = {a.C, a.R, a.D, a.M};
  cfg.seed = a.seed;
  cfg.replications = a.replications;
  cfg.threads = a.threads;

  double analytic = 0.0;
  std::string analytic_label;
  if (a.policy == "checkpoint") {
    cfg.policy = ckmig::PredictedCheckpointPolicy{};
    analytic = ckmig::throughput_checkpoint_sequential(a.N, mu, cfg.costs);
    analytic_label = "rho_cp";
    cfg.horizon = a.horizon ? parse_one_duration(*a.horizon) : 100.0 * mu;
  } else if (a.policy == "migration") {
    const std::int64_t m =
        a.spares ? *a.spares
                 : ckmig::min_spares(a.N, ckmig::availability_params(mu, a.M, a.D), a.epsilon).m;
    cfg.policy = ckmig::MigrationPolicy{m};
    analytic = ckmig::throughput_migration_sequential(a.N, m, mu, a.M);
    analytic_label = "rho_m";
    cfg.horizon = a.horizon ? parse_one_duration(*a.horizon) : 100.0 * mu;
  } else {
    const double mu_k = ckmig::mtbf_of_group_exponential(mu, a.job_log2);
    const double T = a.period.value_or(ckmig::optimal_period(a.C, mu_k));
    cfg.policy = ckmig::PeriodicPolicy{T, a.job_log2};
    analytic = ckmig::min_waste_extended(a.C, mu_k, a.R, a.D).clamped;
    if (a.period) analytic = std::min(1.0, ckmig::waste_extended(a.C, T, mu_k, a.R, a.D));
    analytic_label = "waste";
    cfg.horizon = a.horizon ? parse_one_duration(*a.horizon) : 500.0 * mu_k;
  }

  const auto result = ckmig::simulate(cfg);
  const bool periodic = a.policy == "periodic";
  nlohmann::json j{{"policy", a.policy},
                   {"N", a.N},
                   {"mu_minutes", mu},
                   {"horizon", cfg.horizon},
                   {"seed", a.seed},
                   {"replications", a.replications},
                   {"mean_throughput", result.mean_throughput},
                   {"ci95_halfwidth", result.ci95_halfwidth},
                   {"run_failure_rate", result.run_failure_rate},
                   {"unavailable_fraction", result.unavailable_fraction},
                   {"measured_waste", result.measured_waste},
                   {"mean_work_lost_per_failure", result.mean_work_lost_per_failure},
                   {"failures", result.failures},
                   {"analytic_" + analytic_label, analytic},
                   {"warnings", result.warnings}};
  if (const auto* mig = std::get_if<ckmig::MigrationPolicy>(&cfg.policy)) {
    j["spares"] = mig->spares;
  }
  if (const auto* per = std::get_if<ckmig::PeriodicPolicy>(&cfg.policy)) {
    j["period"] = per->period;
    j["job_size_log2"] = per->job_size_log2;
  }
  switch (a.output.parsed()) {
    case OutputFormat::Json:
      a.output.write(j.dump(2) + "\n");
      break;
    case OutputFormat::Csv: {
      std::string header, row;
      for (const auto& [key, value] : j.items()) {
        if (key == "warnings") continue;
        header += (header.empty() ? "" : ",") + key;
        row += (row.empty() ? "" : ",") + value.dump();
      }
      a.output.write(header + "\n" + row + "\n");
      break;
    }
    default: {
      std::string text = fmt::format(
          "policy={} N={} mtbf={} horizon={:g} min, {} replications (seed {})\n", a.policy, a.N,
          ckmig::format_duration(mu), cfg.horizon, a.replications, a.seed);
      if (periodic) {
        text += fmt::format("measured waste   = {:.6g} (analytic {:.6g})\n", result.measured_waste,
                            analytic);
        text += fmt::format("work lost/failure = {:.6g} min (T/2 = {:.6g})\n",
                            result.mean_work_lost_per_failure,
                            std::get<ckmig::PeriodicPolicy>(cfg.policy).period / 2.0);
      } else {
        text += fmt::format("throughput = {:.6g} +- {:.3g} (analytic {} = {:.6g})\n",
                            result.mean_throughput, result.ci95_halfwidth, analytic_label,
                            analytic);
      }
      if (const auto* mig = std::get_if<ckmig::MigrationPolicy>(&cfg.policy)) {
        text += fmt::format("spares = {}, run failure rate = {:.4g}, unavailable fraction = {:.6g}\n",
                            mig->spares, result.run_failure_rate, result.unavailable_fraction);
      }
      a.output.write(text);
    }
  }
  warn(result.warnings);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checkpointing vs. migration on failure-prone clusters"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  ScenarioArgs sc;
  auto* scenario = app.add_subcommand("scenario", "improvement of migration over checkpointing");
  scenario->add_option("name", sc.name, "preset name or 'custom'")->required();
  scenario->add_option("--presets", sc.presets, "preset JSON file");
  scenario->add_option("--N", sc.machines, "machine counts")->expected(1, -1);
  scenario->add_option("--mtbf", sc.mtbfs, "per-machine MTBF values (1d, 1w, 1mo, 1y, <x>m)")
      ->expected(1, -1);
  scenario->add_option("--epsilon", sc.epsilons, "target failure probabilities")->expected(1, -1);
  scenario->add_option("--C", sc.C, "checkpoint minutes");
  scenario->add_option("--R", sc.R, "recovery minutes (defaults to C for custom)");
  scenario->add_option("--D", sc.D, "down/reboot minutes");
  scenario->add_option("--M", sc.M, "migration minutes");
  scenario->add_option("--p1", sc.p1, "probability that a job is sequential");
  scenario->add_option("--workload", sc.workload, "seq or par")
      ->check(CLI::IsMember({"seq", "par", "sequential", "parallel"}));
  scenario->add_option("--method", sc.method, "exact or lower-bound")
      ->check(CLI::IsMember({"exact", "lower-bound"}));
  sc.output.add_to(scenario);
  scenario->callback([&] { exit_code = run_scenario_cmd(sc); });

  YieldArgs ya;
  auto* yield = app.add_subcommand("yield", "platform yield under periodic checkpointing");
  yield->add_option("--C", ya.C, "checkpoint minutes");
  yield->add_option("--R", ya.R, "recovery minutes");
  yield->add_option("--D", ya.D, "down/reboot minutes");
  yield->add_option("--p1", ya.p1, "probability that a job is sequential");
  yield->add_option("--N", ya.machines, "machine counts")->expected(1, -1);
  yield->add_option("--mtbf", ya.mtbfs, "per-machine MTBF values")->expected(1, -1);
  ya.output.add_to(yield);
  yield->callback([&] { exit_code = run_yield_cmd(ya); });

  SparesArgs sp;
  auto* spares = app.add_subcommand("spares", "minimal spare pool for migration");
  spares->add_option("--N", sp.N, "machine count")->required();
  spares->add_option("--mtbf", sp.mtbf, "per-machine MTBF");
  spares->add_option("--M", sp.M, "migration minutes");
  spares->add_option("--D", sp.D, "down/reboot minutes");
  spares->add_option("--epsilon", sp.epsilon, "target failure probability");
  spares->add_option("--method", sp.method, "exact or lower-bound")
      ->check(CLI::IsMember({"exact", "lower-bound"}));
  sp.output.add_to(spares);
  spares->callback([&] { exit_code = run_spares_cmd(sp); });

  PeriodicArgs pa;
  auto* periodic = app.add_subcommand("periodic", "periodic checkpointing waste and period");
  periodic->add_option("--C", pa.C, "checkpoint minutes");
  periodic->add_option("--R", pa.R, "recovery minutes");
  periodic->add_option("--D", pa.D, "down/reboot minutes");
  periodic->add_option("--mtbf", pa.mtbf, "MTBF seen by the job");
  periodic->add_option("--period", pa.period, "checkpoint period T (default: T_opt)");
  periodic->add_option("--N", pa.N, "machine count for the independent-jobs yield");
  pa.output.add_to(periodic);
  periodic->callback([&] { exit_code = run_periodic_cmd(pa); });

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo validation of the analytic models");
  sim->add_option("--policy", sa.policy, "checkpoint, migration or periodic")
      ->check(CLI::IsMember({"checkpoint", "migration", "periodic"}));
  sim->add_option("--N", sa.N, "machine count");
  sim->add_option("--mtbf", sa.mtbf, "per-machine MTBF");
  sim->add_option("--shape", sa.shape, "Weibull shape (mean kept at --mtbf); default exponential");
  sim->add_option("--C", sa.C, "checkpoint minutes");
  sim->add_option("--R", sa.R, "recovery minutes");
  sim->add_option("--D", sa.D, "down/reboot minutes");
  sim->add_option("--M", sa.M, "migration minutes");
  sim->add_option("--spares", sa.spares, "spare count (default: sized from --epsilon)");
  sim->add_option("--epsilon", sa.epsilon, "target failure probability for sizing spares");
  sim->add_option("--period", sa.period, "checkpoint period (default: T_opt for the job)");
  sim->add_option("--job-log2", sa.job_log2, "periodic job uses 2^k machines");
  sim->add_option("--seed", sa.seed, "64-bit seed");
  sim->add_option("--replications", sa.replications, "independent replications");
  sim->add_option("--horizon", sa.horizon, "simulated time per replication");
  sim->add_option("--threads", sa.threads, "worker threads (0 = all cores)");
  sa.output.add_to(sim);
  sim->callback([&] { exit_code = run_simulate_cmd(sa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  } catch (const ckmig::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
