// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "gfre/cli.hpp"
#include "gfre/generator.hpp"
#include "gfre/rewriter.hpp"
#include "gfre/verify.hpp"
#include "json.hpp"

using namespace gfre;
using gfre::testing::kTwoBitMultiplier;
using gfre::testing::mutate;
using gfre::testing::sparse_irreducibles;

namespace {

using Clock = std::chrono::steady_clock;

// Collects failure details for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !ok;
  }
  bool failed() const { return failed_; }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }
  std::string note;

 private:
  bool failed_ = false;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

unsigned pool_size() { return std::max(4U, std::thread::hardware_concurrency()); }

std::vector<IrrPoly> corpus(std::size_t lo, std::size_t hi) {
  std::vector<IrrPoly> out;
  for (std::size_t m = lo; m <= hi; ++m) {
    for (auto& p : sparse_irreducibles(m)) out.push_back(std::move(p));
  }
  return out;
}

const std::vector<IrrPoly>& small_corpus() {
  static const std::vector<IrrPoly> c = corpus(2, 16);
  return c;
}

void worked_example(Check& c) {
  const auto t0 = Clock::now();
  const Netlist n = Netlist::parse(kTwoBitMultiplier);
  const RewriteReport r = rewrite_all(n, 2);
  c.expect(n.gates().size() == 7, "two-bit netlist has 7 gates");
  c.expect(render_expression(r.bits[0].expr, 2) == "a0*b0 + a1*b1", "z0 = a0b0 + a1b1");
  c.expect(render_expression(r.bits[1].expr, 2) == "a0*b1 + a1*b0 + a1*b1", "z1 = a0b1 + a1b0 + a1b1");
  const ExtractionReport e = extract_irreducible(r);
  c.expect(e.recovered == IrrPoly({2, 1, 0}), "P(x) = x^2 + x + 1, got " + e.recovered.to_string());
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  c.expect(secs < 1.0, "completes under 1 s");
}

void reduction_rows(Check& c) {
  using Rows = std::vector<std::vector<std::size_t>>;
  const ReductionMatrix p1 = reduction_matrix(4, IrrPoly({4, 3, 0}));
  const ReductionMatrix p2 = reduction_matrix(4, IrrPoly({4, 1, 0}));
  c.expect(Rows(p1.rows.begin() + 4, p1.rows.end()) == Rows{{0, 3}, {0, 1, 3}, {0, 1, 2, 3}}, "x^4+x^3+1 rows");
  c.expect(Rows(p2.rows.begin() + 4, p2.rows.end()) == Rows{{0, 1}, {1, 2}, {2, 3}}, "x^4+x+1 rows");
  const SpecExpressions spec = spec_expressions(4, IrrPoly({4, 1, 0}));
  const std::vector<std::string> expected{
      "a0*b0 + a1*b3 + a2*b2 + a3*b1",                   // s0 + s4
      "a0*b1 + a1*b0 + a1*b3 + a2*b2 + a2*b3 + a3*b1 + a3*b2",  // s1 + s4 + s5
      "a0*b2 + a1*b1 + a2*b0 + a2*b3 + a3*b2 + a3*b3",
      "a0*b3 + a1*b2 + a2*b1 + a3*b0 + a3*b3",
  };
  for (std::size_t i = 0; i < 4; ++i) {
    c.expect(render_expression(spec.bits[i], 4) == expected[i], "z" + std::to_string(i) + " expression");
  }
}

void xor_costs(Check& c) {
  const std::size_t p1 = xor_cost(reduction_matrix(4, IrrPoly({4, 3, 0})));
  const std::size_t p2 = xor_cost(reduction_matrix(4, IrrPoly({4, 1, 0})));
  c.expect(p1 == 9, "x^4+x^3+1 costs 9, got " + std::to_string(p1));
  c.expect(p2 == 6, "x^4+x+1 costs 6, got " + std::to_string(p2));
  c.note = "9 / 6";
}

void round_trip(Check& c) {
  std::size_t recovered = 0, total = 0;
  for (const IrrPoly& p : small_corpus()) {
    const ExtractionReport e = extract_irreducible(rewrite_all(gen_mastrovito(p.degree(), p), 2));
    ++total;
    recovered += e.recovered == p;
    c.expect(e.recovered == p, p.to_string() + " recovered as " + e.recovered.to_string());
  }
  std::string timings;
  for (const char* text : {"64,21,19,4,0", "96,44,7,2,0"}) {
    const IrrPoly p = IrrPoly::parse(text);
    const auto t0 = Clock::now();
    const ExtractionReport e = extract_irreducible(rewrite_all(gen_mastrovito(p.degree(), p), pool_size()));
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    ++total;
    recovered += e.recovered == p;
    c.expect(e.recovered == p, p.to_string() + " recovered as " + e.recovered.to_string());
    if (p.degree() == 64) c.expect(secs < 300.0, "m=64 under 5 minutes");
    char buf[64];
    std::snprintf(buf, sizeof buf, ", m=%zu %.2f s", p.degree(), secs);
    timings += buf;
  }
  c.note = std::to_string(recovered) + "/" + std::to_string(total) + " recovered" + timings + ", " +
           std::to_string(pool_size()) + " threads";
}

void oracle_equivalence(Check& c) {
  std::size_t netlists = 0;
  for (const IrrPoly& p : corpus(2, 8)) {
    const Netlist n = gen_mastrovito(p.degree(), p);
    const Verdict exh = exhaustive_check(n, p);
    const Verdict sym = symbolic_check(rewrite_all(n, 1), p);
    c.expect(exh.status == VerdictStatus::Equivalent, "exhaustive on " + p.to_string());
    c.expect(sym.status == exh.status, "symbolic agrees on " + p.to_string());
    ++netlists;
  }
  std::mt19937_64 rng(20240601);
  std::size_t mutations = 0, caught = 0;
  for (const IrrPoly& p : {IrrPoly({4, 1, 0}), IrrPoly({4, 3, 0}), IrrPoly({8, 4, 3, 1, 0}), IrrPoly({8, 7, 2, 1, 0})}) {
    const Netlist base = gen_mastrovito(p.degree(), p);
    for (int t = 0; t < 30; ++t) {
      const Netlist bad = mutate(base, rng() % base.gates().size(), rng);
      const Verdict sym = symbolic_check(rewrite_all(bad, 1), p);
      const Verdict exh = exhaustive_check(bad, p);
      ++mutations;
      const bool hit = sym.status == VerdictStatus::Mismatch && sym.witness && witness_differs(bad, p, *sym.witness);
      caught += hit;
      c.expect(hit, "mutation " + std::to_string(mutations) + " on " + p.to_string() + " missed");
      c.expect(exh.status == sym.status, "oracles disagree on mutation " + std::to_string(mutations));
    }
  }
  c.expect(mutations >= 100, "at least 100 mutations");
  c.note = std::to_string(netlists) + " netlists, " + std::to_string(caught) + "/" + std::to_string(mutations) +
           " mutations caught";
}

void obfuscation(Check& c) {
  std::size_t recovered = 0, total = 0, rewrites = 0;
  for (std::size_t m : {4u, 8u, 16u}) {
    const auto polys = sparse_irreducibles(m);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const IrrPoly& p = polys[seed % polys.size()];
      ObfuscationStats stats;
      const Netlist n = obfuscate(gen_mastrovito(m, p), seed, 20 * m, &stats);
      rewrites += stats.applied;
      const PipelineReport r = full_pipeline(n, 2);
      const bool ok = r.extraction && r.extraction->recovered == p && r.verdict.status == VerdictStatus::Equivalent;
      ++total;
      recovered += ok;
      c.expect(ok, p.to_string() + " seed " + std::to_string(seed));
    }
  }
  c.note = std::to_string(recovered) + "/" + std::to_string(total) + " recovered, " + std::to_string(rewrites) +
           " local rewrites applied";
}

void determinism(Check& c) {
  const unsigned max_threads = pool_size();
  std::size_t netlists = 0;
  for (const IrrPoly& p : small_corpus()) {
    const Netlist n = gen_mastrovito(p.degree(), p);
    const RewriteReport base = rewrite_all(n, 1);
    for (unsigned t : {2U, max_threads}) {
      const RewriteReport r = rewrite_all(n, t);
      bool same = r.bits.size() == base.bits.size();
      for (std::size_t i = 0; same && i < base.bits.size(); ++i) {
        same = r.bits[i].bit == i && r.bits[i].expr == base.bits[i].expr &&
               render_expression(r.bits[i].expr, n.width()) == render_expression(base.bits[i].expr, n.width()) &&
               r.bits[i].stats.steps == base.bits[i].stats.steps &&
               r.bits[i].stats.peak_monomials == base.bits[i].stats.peak_monomials;
      }
      c.expect(same, p.to_string() + " differs at " + std::to_string(t) + " threads");
    }
    ++netlists;
  }
  c.note = std::to_string(netlists) + " netlists at 1, 2, " + std::to_string(max_threads) + " threads";
}

void per_bit_profile(Check& c) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "gfre_acceptance_profile";
  fs::create_directories(dir);
  std::size_t records = 0;
  for (const char* text : {"2,1,0", "8,4,3,1,0", "16,5,3,1,0", "64,21,19,4,0"}) {
    const IrrPoly p = IrrPoly::parse(text);
    const std::string net = (dir / ("m" + std::to_string(p.degree()) + ".net")).string();
    std::ostringstream out, err;
    int code = cli::run({"generate", "--m", std::to_string(p.degree()), "--poly", text, "--out", net}, out, err);
    c.expect(code == 0, std::string("generate ") + text + ": " + err.str());
    std::ostringstream report, err2;
    code = cli::run({"extract", net, "--report", "structured", "--threads", std::to_string(pool_size())}, report, err2);
    c.expect(code == 0, std::string("extract ") + text + ": " + err2.str());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(report.str());
    } catch (const std::exception& e) {
      c.expect(false, std::string("report is not a structured document: ") + e.what());
      continue;
    }
    const auto& bits = j["rewrite"]["bits"];
    c.expect(bits.is_array() && bits.size() == p.degree(), std::string("one record per bit for ") + text);
    std::vector<bool> seen(p.degree(), false);
    for (const auto& rec : bits) {
      const bool complete = rec.contains("bit") && rec.contains("wall_time_ms") && rec.contains("steps") &&
                            rec.contains("peak_monomials") && rec["wall_time_ms"].is_number() &&
                            rec["wall_time_ms"].get<double>() >= 0.0;
      c.expect(complete, "record fields for " + std::string(text));
      if (complete && rec["bit"].get<std::size_t>() < seen.size()) seen[rec["bit"].get<std::size_t>()] = true;
      ++records;
    }
    c.expect(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }), std::string("every bit covered for ") + text);
  }
  fs::remove_all(dir);
  c.note = std::to_string(records) + " per-bit records";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example: two-bit multiplier expressions and x^2+x+1", worked_example},
      {2, "reduction matrix rows and degree-4 output expressions", reduction_rows},
      {3, "reduction XOR cost of both degree-4 fields", xor_costs},
      {4, "round-trip extraction, m in [2,16] corpus plus m=64, 96", round_trip},
      {5, "exhaustive/symbolic oracle agreement and mutation detection", oracle_equivalence},
      {6, "extraction on obfuscated netlists, m in {4,8,16}, 20 seeds", obfuscation},
      {7, "thread-count independence of rewriting", determinism},
      {8, "per-bit runtime records from extract", per_bit_profile},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = Clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    failed += c.failed();
    std::printf("[%s] criterion %d: %s (%zu checks, %.2f s%s%s)\n", c.failed() ? "FAIL" : "PASS", cr.id, cr.title,
                c.checks(), secs, c.note.empty() ? "" : "; ", c.note.c_str());
    for (const auto& f : c.failures()) std::printf("         %s\n", f.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
