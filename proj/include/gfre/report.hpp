#pragma once

#include <string>

#include "json.hpp"

#include "gfre/verify.hpp"

namespace gfre {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportOptions {
  // Per-bit expressions are included for m <= 16 or when forced.
  bool force_expressions = false;
  nlohmann::json config = nlohmann::json::object();
};

nlohmann::json to_json(const Verdict& verdict, std::size_t m);
nlohmann::json to_json(const RewriteReport& report, bool with_expressions);
nlohmann::json to_json(const PipelineReport& report, const ReportOptions& options);

// Plain-text rendering of a report document. Carries every value of the
// document, one "path: value" line per scalar, with per-bit records laid
// out as a table.
std::string render_text(const nlohmann::json& document);

}  // namespace gfre
