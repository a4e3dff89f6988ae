#pragma once

#include <string>

#include <json.hpp>

namespace rapidbench {

/// Renders a saved eval report (the JSON produced by EvalReport::to_json) as
/// a Markdown summary whose accuracy table has one row per task and one
/// column per prompt language (German, English).
std::string report_markdown(const nlohmann::json& report);

/// Flat CSV of the per-(task, language) summary cells.
std::string report_csv(const nlohmann::json& report);

}  // namespace rapidbench
