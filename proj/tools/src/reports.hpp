#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "glin/glin.hpp"

namespace glin::tool {

/// Fixed-format double for CSV cells: shortest round-trip via %.17g, '.'
/// decimal separator (C locale). Deterministic for identical inputs.
std::string csv_number(double v);

/// Write `text` verbatim with LF endings (binary mode).
void write_text_file(const std::string& path, const std::string& text);

void write_json_file(const std::string& path, const nlohmann::json& doc);

nlohmann::json report_to_json(const IterationReport& report);

/// CSV convergence table: n, step_norm, residual_norm, ratio.
std::string report_to_csv(const IterationReport& report);

nlohmann::json certificate_to_json(const Certificate& cert);

}  // namespace glin::tool
