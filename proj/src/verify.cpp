#include "gfre/verify.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <thread>

#include "gfre/generator.hpp"

namespace gfre {

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Equivalent: return "equivalent";
    case VerdictStatus::Mismatch: return "mismatch";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(CheckMethod method) {
  switch (method) {
    case CheckMethod::Exhaustive: return "exhaustive";
    case CheckMethod::Random: return "random";
    case CheckMethod::Symbolic: return "symbolic";
  }
  return "?";
}

int exit_code(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Equivalent: return 0;
    case VerdictStatus::Mismatch: return 2;
    case VerdictStatus::Inconclusive: return 3;
  }
  return 3;
}

std::vector<std::uint8_t> reference_multiply(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b,
                                             const IrrPoly& p) {
  const std::size_t m = p.degree();
  const Gf2x product = mulmod(Gf2x::from_bits(a), Gf2x::from_bits(b), p.to_gf2x());
  std::vector<std::uint8_t> z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = product.coeff(i) ? 1 : 0;
  return z;
}

namespace {

std::vector<std::uint8_t> simulate_one(const Netlist& netlist, const Witness& w) {
  const std::size_t m = netlist.width();
  std::vector<std::uint64_t> a(m), b(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = w.a.at(i);
    b[i] = w.b.at(i);
  }
  auto z = simulate(netlist, a, b);
  std::vector<std::uint8_t> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = z[i] & 1U;
  return out;
}

void require_width(const Netlist& netlist, const IrrPoly& p) {
  if (p.degree() != netlist.width()) {
    throw Error("polynomial degree " + std::to_string(p.degree()) + " does not match netlist width " +
                std::to_string(netlist.width()));
  }
}

}  // namespace

bool witness_differs(const Netlist& netlist, const IrrPoly& p, const Witness& w) {
  require_width(netlist, p);
  return simulate_one(netlist, w) != reference_multiply(w.a, w.b, p);
}

Verdict exhaustive_check(const Netlist& netlist, const IrrPoly& p, bool force, unsigned threads) {
  require_width(netlist, p);
  const std::size_t m = netlist.width();
  if (m > 8 && !force) throw Error("exhaustive check limited to m <= 8 (use force for up to 16)");
  if (m > 16) throw Error("exhaustive check cannot exceed m = 16");
  threads = std::max(1U, threads);

  const std::uint64_t total = std::uint64_t{1} << (2 * m);
  const std::uint64_t passes = (total + 63) / 64;
  const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
  const Gf2x modulus = p.to_gf2x();

  auto scan = [&](std::uint64_t first_pass, std::uint64_t last_pass) -> std::uint64_t {
    std::vector<std::uint64_t> a(m), b(m);
    for (std::uint64_t pass = first_pass; pass < last_pass; ++pass) {
      std::fill(a.begin(), a.end(), 0);
      std::fill(b.begin(), b.end(), 0);
      const std::uint64_t base = pass * 64;
      const unsigned lanes = static_cast<unsigned>(std::min<std::uint64_t>(64, total - base));
      for (unsigned lane = 0; lane < lanes; ++lane) {
        const std::uint64_t n = base + lane;
        for (std::size_t i = 0; i < m; ++i) {
          a[i] |= ((n >> i) & 1U) << lane;
          b[i] |= ((n >> (m + i)) & 1U) << lane;
        }
      }
      const auto z = simulate(netlist, a, b);
      for (unsigned lane = 0; lane < lanes; ++lane) {
        const std::uint64_t n = base + lane;
        Gf2x pa, pb;
        for (std::size_t i = 0; i < m; ++i) {
          if ((n >> i) & 1U) pa.flip(i);
          if ((n >> (m + i)) & 1U) pb.flip(i);
        }
        const Gf2x expected = mulmod(pa, pb, modulus);
        for (std::size_t i = 0; i < m; ++i) {
          if (((z[i] >> lane) & 1U) != static_cast<std::uint64_t>(expected.coeff(i))) return n;
        }
      }
    }
    return std::numeric_limits<std::uint64_t>::max();
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, passes));
  std::vector<std::uint64_t> first_bad(workers, std::numeric_limits<std::uint64_t>::max());
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (passes + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
      const std::uint64_t lo = t * chunk;
      const std::uint64_t hi = std::min(passes, lo + chunk);
      pool.emplace_back([&, t, lo, hi] { first_bad[t] = scan(lo, hi); });
    }
  }

  Verdict v;
  v.method = CheckMethod::Exhaustive;
  const std::uint64_t bad = *std::min_element(first_bad.begin(), first_bad.end());
  if (bad == std::numeric_limits<std::uint64_t>::max()) {
    v.status = VerdictStatus::Equivalent;
    v.note = std::to_string(total) + " input pairs simulated";
    return v;
  }
  v.status = VerdictStatus::Mismatch;
  Witness w;
  for (std::size_t i = 0; i < m; ++i) {
    w.a.push_back(static_cast<std::uint8_t>((bad & mask) >> i & 1U));
    w.b.push_back(static_cast<std::uint8_t>((bad >> m) >> i & 1U));
  }
  v.witness = std::move(w);
  v.note = "first differing input index " + std::to_string(bad);
  return v;
}

Verdict random_check(const Netlist& netlist, const IrrPoly& p, std::size_t vectors, std::uint64_t seed) {
  require_width(netlist, p);
  const std::size_t m = netlist.width();
  const Gf2x modulus = p.to_gf2x();
  std::mt19937_64 rng(seed);
  Verdict v;
  v.method = CheckMethod::Random;

  std::vector<std::uint64_t> a(m), b(m);
  for (std::size_t done = 0; done < vectors; done += 64) {
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = rng();
      b[i] = rng();
    }
    const auto z = simulate(netlist, a, b);
    const unsigned lanes = static_cast<unsigned>(std::min<std::size_t>(64, vectors - done));
    for (unsigned lane = 0; lane < lanes; ++lane) {
      Witness w;
      for (std::size_t i = 0; i < m; ++i) {
        w.a.push_back(static_cast<std::uint8_t>((a[i] >> lane) & 1U));
        w.b.push_back(static_cast<std::uint8_t>((b[i] >> lane) & 1U));
      }
      const Gf2x expected = mulmod(Gf2x::from_bits(w.a), Gf2x::from_bits(w.b), modulus);
      for (std::size_t i = 0; i < m; ++i) {
        if (((z[i] >> lane) & 1U) != static_cast<std::uint64_t>(expected.coeff(i))) {
          v.status = VerdictStatus::Mismatch;
          v.witness = std::move(w);
          v.note = "mismatch at random vector " + std::to_string(done + lane);
          return v;
        }
      }
    }
  }
  v.status = VerdictStatus::Equivalent;
  v.note = std::to_string(vectors) + " random input pairs simulated";
  return v;
}

Verdict symbolic_check(const RewriteReport& report, const IrrPoly& p) {
  const std::size_t m = report.m;
  if (p.degree() != m) {
    throw Error("polynomial degree " + std::to_string(p.degree()) + " does not match report width " +
                std::to_string(m));
  }
  if (report.bits.size() != m) throw Error("rewrite report is incomplete");
  const SpecExpressions spec = spec_expressions(m, p);

  Verdict v;
  v.method = CheckMethod::Symbolic;
  for (std::size_t i = 0; i < m; ++i) {
    Poly2 diff = report.bits[i].expr + spec.bits[i];
    if (!diff.is_zero()) v.diffs.push_back(BitDiff{i, std::move(diff)});
  }
  if (v.diffs.empty()) {
    v.status = VerdictStatus::Equivalent;
    return v;
  }
  v.status = VerdictStatus::Mismatch;
  // A lowest-degree monomial of a nonzero difference is the only one that
  // survives when exactly its variables are set, so the difference is 1 there.
  const Monomial pick = v.diffs.front().difference.sorted().front();
  Witness w{std::vector<std::uint8_t>(m, 0), std::vector<std::uint8_t>(m, 0)};
  for (VarId var : pick.vars()) {
    if (var.value < m) {
      w.a[var.value] = 1;
    } else if (var.value < 2 * m) {
      w.b[var.value - m] = 1;
    }
  }
  v.witness = std::move(w);
  std::size_t monomials = 0;
  for (const auto& d : v.diffs) monomials += d.difference.size();
  v.note = std::to_string(v.diffs.size()) + " bit(s) differ in " + std::to_string(monomials) + " monomial(s)";
  return v;
}

PipelineReport full_pipeline(const Netlist& netlist, unsigned threads) {
  PipelineReport out;
  out.rewrite = rewrite_all(netlist, threads);
  out.verdict.status = VerdictStatus::Inconclusive;
  out.verdict.method = CheckMethod::Symbolic;

  auto t0 = std::chrono::steady_clock::now();
  try {
    out.extraction = extract_irreducible(out.rewrite);
  } catch (const ExtractionError& e) {
    out.extract_time = std::chrono::steady_clock::now() - t0;
    out.diagnostics.emplace_back(e.what());
    out.verdict.note = "irreducible polynomial could not be extracted";
    return out;
  }
  out.extract_time = std::chrono::steady_clock::now() - t0;
  out.diagnostics.insert(out.diagnostics.end(), out.extraction->warnings.begin(), out.extraction->warnings.end());

  const IrrPoly& p = out.extraction->recovered;
  if (!p.has_constant_term()) {
    out.verdict.note = "recovered polynomial " + p.to_string() + " is not a field polynomial";
    return out;
  }
  out.irreducible = validate_irreducible(p);
  if (!out.irreducible) {
    out.diagnostics.push_back("recovered polynomial " + p.to_string() + " is reducible over GF(2)");
    out.verdict.note = "recovered polynomial is reducible";
    return out;
  }

  t0 = std::chrono::steady_clock::now();
  out.verdict = symbolic_check(out.rewrite, p);
  out.check_time = std::chrono::steady_clock::now() - t0;
  return out;
}

}  // namespace gfre
