#include "gfre/report.hpp"

#include <algorithm>
#include <sstream>

namespace gfre {

namespace {

double to_ms(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) / 1e6; }

std::string bits_string(const std::vector<std::uint8_t>& bits) {
  // Most significant bit first.
  std::string s;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) s += *it ? '1' : '0';
  return s;
}

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_record_table(const nlohmann::json& v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const nlohmann::json& e) {
           return e.is_object() && std::all_of(e.begin(), e.end(), [](const nlohmann::json& f) {
             return f.is_primitive();
           });
         });
}

void render(const nlohmann::json& v, const std::string& path, std::ostream& os) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      render(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    }
    return;
  }
  if (is_record_table(v)) {
    std::vector<std::string> columns;
    for (const auto& rec : v) {
      for (auto it = rec.begin(); it != rec.end(); ++it) {
        if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
      }
    }
    std::vector<std::size_t> width(columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
    for (const auto& rec : v) {
      std::vector<std::string> row;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        row.push_back(rec.contains(columns[c]) ? scalar_text(rec[columns[c]]) : "-");
        width[c] = std::max(width[c], row.back().size());
      }
      cells.push_back(std::move(row));
    }
    os << path << ":\n";
    auto line = [&](const std::vector<std::string>& row) {
      os << ' ';
      for (std::size_t c = 0; c < row.size(); ++c) {
        os << ' ' << row[c];
        if (c + 1 < row.size()) os << std::string(width[c] - row[c].size(), ' ');
      }
      os << '\n';
    };
    line(columns);
    for (const auto& row : cells) line(row);
    return;
  }
  if (v.is_array()) {
    if (v.empty()) {
      os << path << ": []\n";
      return;
    }
    for (std::size_t k = 0; k < v.size(); ++k) render(v[k], path + "[" + std::to_string(k) + "]", os);
    return;
  }
  os << path << ": " << scalar_text(v) << '\n';
}

}  // namespace

nlohmann::json to_json(const Verdict& verdict, std::size_t m) {
  nlohmann::json j;
  j["status"] = std::string(to_string(verdict.status));
  j["method"] = std::string(to_string(verdict.method));
  if (!verdict.note.empty()) j["note"] = verdict.note;
  if (verdict.witness) {
    j["witness"] = {{"a", bits_string(verdict.witness->a)}, {"b", bits_string(verdict.witness->b)}};
  }
  if (!verdict.diffs.empty()) {
    nlohmann::json diffs = nlohmann::json::array();
    for (const auto& d : verdict.diffs) {
      nlohmann::json rec{{"bit", d.bit}, {"monomials", d.difference.size()}};
      if (m <= 16) rec["difference"] = render_expression(d.difference, m);
      diffs.push_back(std::move(rec));
    }
    j["differences"] = std::move(diffs);
  }
  return j;
}

nlohmann::json to_json(const RewriteReport& report, bool with_expressions) {
  nlohmann::json bits = nlohmann::json::array();
  std::size_t peak = 0;
  for (const auto& b : report.bits) {
    nlohmann::json rec{{"bit", b.bit},
                       {"monomials", b.expr.size()},
                       {"steps", b.stats.steps},
                       {"peak_monomials", b.stats.peak_monomials},
                       {"wall_time_ms", to_ms(b.stats.wall_time)}};
    if (with_expressions) rec["expression"] = render_expression(b.expr, report.m);
    peak = std::max(peak, b.stats.peak_monomials);
    bits.push_back(std::move(rec));
  }
  return {{"m", report.m},
          {"threads", report.threads},
          {"total_time_ms", to_ms(report.total_time)},
          {"peak_monomials", peak},
          {"bits", std::move(bits)}};
}

nlohmann::json to_json(const PipelineReport& report, const ReportOptions& options) {
  const std::size_t m = report.rewrite.m;
  nlohmann::json doc;
  doc["tool_version"] = kToolVersion;
  doc["config"] = options.config;
  doc["rewrite"] = to_json(report.rewrite, options.force_expressions || m <= 16);

  nlohmann::json extraction;
  if (report.extraction) {
    const auto& ex = *report.extraction;
    extraction["polynomial"] = ex.recovered.to_string();
    extraction["exponents"] = ex.recovered.exponent_list();
    extraction["irreducible"] = report.irreducible;
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t i = 0; i < ex.membership.size(); ++i) {
      table.push_back({{"bit", i}, {"out_field_hits", ex.partial_hits[i]}, {"member", static_cast<bool>(ex.membership[i])}});
    }
    extraction["membership"] = std::move(table);
  } else {
    extraction["polynomial"] = nullptr;
  }
  doc["extraction"] = std::move(extraction);
  doc["verdict"] = to_json(report.verdict, m);
  doc["diagnostics"] = report.diagnostics;
  doc["timings_ms"] = {{"rewrite", to_ms(report.rewrite.total_time)},
                       {"extract", to_ms(report.extract_time)},
                       {"check", to_ms(report.check_time)}};
  return doc;
}

std::string render_text(const nlohmann::json& document) {
  std::ostringstream os;
  render(document, "", os);
  return os.str();
}

}  // namespace gfre
