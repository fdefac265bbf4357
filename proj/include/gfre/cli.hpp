#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gfre::cli {

enum class ReportFormat { Text, Structured };

struct RunConfig {
  std::string command;
  std::string input;
  std::string out;  // empty: standard output
  std::size_t m = 0;
  std::vector<std::string> polys;  // descending exponent lists
  std::string corpus;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> obfuscate_seed;
  std::optional<std::size_t> rewrite_budget;
  std::size_t vectors = 10000;
  ReportFormat format = ReportFormat::Text;
  bool share = true;
  bool force = false;
  bool allow_reducible = false;
  bool expressions = false;
  bool run_extract = false;
};

// Exit codes: 0 success/equivalent, 1 usage, parse or IO error,
// 2 mismatch, 3 inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gfre::cli
