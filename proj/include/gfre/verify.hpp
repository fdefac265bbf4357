#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfre/extractor.hpp"
#include "gfre/gfpoly.hpp"
#include "gfre/netlist.hpp"
#include "gfre/rewriter.hpp"

namespace gfre {

enum class VerdictStatus { Equivalent, Mismatch, Inconclusive };
enum class CheckMethod { Exhaustive, Random, Symbolic };

std::string_view to_string(VerdictStatus status);
std::string_view to_string(CheckMethod method);

// Operand bits, index i = coefficient of x^i.
struct Witness {
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;
};

struct BitDiff {
  std::size_t bit = 0;
  Poly2 difference;  // extracted + specified, i.e. the monomials that disagree
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  CheckMethod method = CheckMethod::Symbolic;
  std::optional<Witness> witness;  // present for every mismatch
  std::vector<BitDiff> diffs;      // symbolic mismatches only
  std::string note;
};

// A(x) * B(x) mod P(x) on bit vectors of length m.
std::vector<std::uint8_t> reference_multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                                             const IrrPoly& p);

// True iff the netlist and the reference multiplier disagree on `w`.
bool witness_differs(const Netlist& netlist, const IrrPoly& p, const Witness& w);

// Simulates all 2^(2m) operand pairs, 64 per pass. Requires m <= 8 unless
// `force` (then m <= 16). The reported witness is the lowest differing
// input index (A in the low bits, B above).
Verdict exhaustive_check(const Netlist& netlist, const IrrPoly& p, bool force = false, unsigned threads = 1);

// `vectors` uniformly random operand pairs from a seeded generator.
Verdict random_check(const Netlist& netlist, const IrrPoly& p, std::size_t vectors, std::uint64_t seed);

// Compares each extracted expression with the expected expression for p.
// Canonical forms are unique, so set equality decides equivalence.
Verdict symbolic_check(const RewriteReport& report, const IrrPoly& p);

struct PipelineReport {
  RewriteReport rewrite;
  std::optional<ExtractionReport> extraction;
  bool irreducible = false;
  Verdict verdict;
  std::vector<std::string> diagnostics;
  std::chrono::nanoseconds extract_time{0};
  std::chrono::nanoseconds check_time{0};
};

// rewrite_all -> extract_irreducible -> validate_irreducible -> symbolic_check
// against the recovered polynomial. Extraction failures give an
// inconclusive verdict with diagnostics instead of throwing.
PipelineReport full_pipeline(const Netlist& netlist, unsigned threads);

// 0 equivalent, 2 mismatch, 3 inconclusive.
int exit_code(VerdictStatus status);

}  // namespace gfre
