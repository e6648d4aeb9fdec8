#pragma once

#include <string>

#include <json.hpp>

#include "ckmig/scenario.hpp"

namespace ckmig {

enum class OutputFormat { Table, Csv, Json };

OutputFormat parse_output_format(const std::string& text);

// "1d", "1w", "1mo", "1y" for the canonical durations, else "<x>m".
std::string format_duration(double minutes);

// "x.x% (m)" or "infeasible".
std::string format_cell(const ScenarioCell& cell);

std::string render_table(const ScenarioTable& table);
std::string render_csv(const ScenarioTable& table);
nlohmann::json to_json(const ScenarioTable& table);

std::string render_table(const YieldTable& table);
std::string render_csv(const YieldTable& table);
nlohmann::json to_json(const YieldTable& table);

std::string render(const ScenarioTable& table, OutputFormat format);
std::string render(const YieldTable& table, OutputFormat format);

}  // namespace ckmig
