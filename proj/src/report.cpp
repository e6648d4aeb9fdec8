#include "ckmig/report.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/core.h>

#include "ckmig/errors.hpp"
#include "ckmig/units.hpp"

namespace ckmig {
namespace {

std::string workload_name(Workload w) {
  return w == Workload::Sequential ? "sequential" : "parallel";
}

std::string format_machines(std::int64_t N) {
  const auto u = static_cast<std::uint64_t>(N);
  if (N >= 256 && std::has_single_bit(u)) return fmt::format("2^{}", std::bit_width(u) - 1);
  return fmt::format("{}", N);
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string render_grid(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out += (c == 0 ? "" : " | ") + pad(cells[c], width[c]);
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out += std::string(total + 3 * (width.size() - 1), '-') + "\n";
  for (const auto& r : rows) out += line(r);
  return out;
}

nlohmann::json nullable(bool present, double value) {
  return present ? nlohmann::json(value) : nlohmann::json(nullptr);
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw DomainError("unknown output format '" + text + "'");
}

std::string format_duration(double minutes) {
  struct Named {
    double value;
    const char* suffix;
  };
  constexpr Named named[] = {{units::kYear, "y"}, {units::kMonth, "mo"},
                             {units::kWeek, "w"}, {units::kDay, "d"}};
  for (const auto& n : named) {
    const double count = minutes / n.value;
    if (count >= 1.0 && count == std::floor(count)) return fmt::format("{}{}", count, n.suffix);
  }
  return fmt::format("{}m", minutes);
}

std::string format_cell(const ScenarioCell& cell) {
  if (!cell.feasible) return "infeasible";
  return fmt::format("{:.1f}% ({})", cell.improvement_pct, cell.spares);
}

std::string render_table(const ScenarioTable& table) {
  const Scenario& s = table.scenario;
  std::string out = fmt::format(
      "scenario {}: C={} R={} D={} M={} ({} workload{}, {} spares)\n", s.name, s.costs.C,
      s.costs.R, s.costs.D, s.costs.M, workload_name(table.workload),
      table.workload == Workload::Parallel ? fmt::format(", p1={}", table.p1) : "",
      to_string(table.method));
  std::vector<std::string> header{"mtbf"};
  for (auto N : s.machines) {
    for (double eps : s.epsilons) header.push_back(fmt::format("N={} eps={:g}", N, eps));
  }
  std::vector<std::vector<std::string>> rows;
  const std::size_t per_row = s.machines.size() * s.epsilons.size();
  for (std::size_t r = 0; r < s.mtbfs.size(); ++r) {
    std::vector<std::string> row{format_duration(s.mtbfs[r])};
    for (std::size_t c = 0; c < per_row; ++c) row.push_back(format_cell(table.cells[r * per_row + c]));
    rows.push_back(std::move(row));
  }
  out += render_grid(header, rows);
  for (const auto& w : table.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string render_csv(const ScenarioTable& table) {
  std::string out = "scenario,mu_minutes,N,epsilon,feasible,spares,rho_cp,rho_m,improvement_pct\n";
  for (const auto& c : table.cells) {
    if (c.feasible) {
      out += fmt::format("{},{},{},{},true,{},{},{},{}\n", table.scenario.name, c.mtbf, c.N,
                         c.epsilon, c.spares, c.rho_cp, c.rho_m, c.improvement_pct);
    } else {
      out += fmt::format("{},{},{},{},false,,{},,\n", table.scenario.name, c.mtbf, c.N,
                         c.epsilon, c.rho_cp);
    }
  }
  return out;
}

nlohmann::json to_json(const ScenarioTable& table) {
  const Scenario& s = table.scenario;
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& c : table.cells) {
    grid.push_back({{"mu_minutes", c.mtbf},
                    {"N", c.N},
                    {"epsilon", c.epsilon},
                    {"feasible", c.feasible},
                    {"spares", c.feasible ? nlohmann::json(c.spares) : nlohmann::json(nullptr)},
                    {"achieved_success", nullable(c.feasible, c.achieved_success)},
                    {"rho_cp", c.rho_cp},
                    {"rho_m", nullable(c.feasible, c.rho_m)},
                    {"improvement_pct", nullable(c.feasible, c.improvement_pct)}});
  }
  return {{"scenario", s.name},
          {"workload", workload_name(table.workload)},
          {"p1", table.p1},
          {"method", std::string(to_string(table.method))},
          {"costs", {{"C", s.costs.C}, {"R", s.costs.R}, {"D", s.costs.D}, {"M", s.costs.M}}},
          {"grid", grid},
          {"warnings", table.warnings}};
}

std::string render_table(const YieldTable& table) {
  std::string out = fmt::format("yield rho/N for C={} R={} D={} p1={}\n", table.C, table.R,
                                table.D, table.p1);
  std::vector<std::string> header{"N"};
  for (double mu : table.mtbfs) header.push_back(fmt::format("mu={}", format_duration(mu)));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < table.machines.size(); ++r) {
    std::vector<std::string> row{format_machines(table.machines[r])};
    for (std::size_t c = 0; c < table.mtbfs.size(); ++c) {
      row.push_back(fmt::format("{:.1f}%", 100.0 * table.cells[r * table.mtbfs.size() + c].yield));
    }
    rows.push_back(std::move(row));
  }
  return out + render_grid(header, rows);
}

std::string render_csv(const YieldTable& table) {
  std::string out = "N,mu_minutes,yield\n";
  for (const auto& c : table.cells) out += fmt::format("{},{},{}\n", c.N, c.mtbf, c.yield);
  return out;
}

nlohmann::json to_json(const YieldTable& table) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : table.cells) {
    cells.push_back({{"N", c.N}, {"mu_minutes", c.mtbf}, {"yield", c.yield}});
  }
  return {{"C", table.C}, {"R", table.R}, {"D", table.D}, {"p1", table.p1}, {"cells", cells}};
}

std::string render(const ScenarioTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return render_csv(table);
    case OutputFormat::Json: return to_json(table).dump(2) + "\n";
    default: return render_table(table);
  }
}

std::string render(const YieldTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return render_csv(table);
    case OutputFormat::Json: return to_json(table).dump(2) + "\n";
    default: return render_table(table);
  }
}

}  // namespace ckmig
