#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gfre/extractor.hpp"
#include "gfre/gfpoly.hpp"
#include "gfre/netlist.hpp"

namespace gfre::testing {

// Seven-gate GF(2^2) multiplier, P(x) = x^2 + x + 1. G0 and G1 drive the
// outputs, G2 XORs two NANDs, G3..G6 are NANDs of operand bits.
inline const char* kTwoBitMultiplier = R"(# 2-bit GF(2^2) multiplier
z0 = XOR(s0, s2)      # G0
z1 = XNOR(s1, s2)     # G1
s1 = XOR(p0, p1)      # G2
p1 = NAND(a0, b1)     # G3
p0 = NAND(a1, b0)     # G4
s2 = NAND(a1, b1)     # G5
s0 = NAND(a0, b0)     # G6
)";

// Every irreducible trinomial and pentanomial of degree m.
inline std::vector<IrrPoly> sparse_irreducibles(std::size_t m) {
  std::vector<IrrPoly> out;
  for (std::size_t a = m - 1; a >= 1; --a) {
    IrrPoly p({m, a, 0});
    if (validate_irreducible(p)) out.push_back(p);
  }
  for (std::size_t a = m - 1; a >= 3; --a) {
    for (std::size_t b = a - 1; b >= 2; --b) {
      for (std::size_t c = b - 1; c >= 1; --c) {
        IrrPoly p({m, a, b, c, 0});
        if (validate_irreducible(p)) out.push_back(p);
      }
    }
  }
  return out;
}

// Truth table of f over variables vars[0..n): entry x has vars[k] = bit k of x.
// Computed through the binary Moebius transform of the ANF coefficients,
// independent of gfre::evaluate.
inline std::vector<std::uint8_t> truth_table(const Poly2& f, const std::vector<VarId>& vars) {
  const std::size_t n = vars.size();
  std::vector<std::uint8_t> table(std::size_t{1} << n, 0);
  for (const auto& mono : f.terms()) {
    std::size_t mask = 0;
    for (VarId v : mono.vars()) {
      std::size_t k = 0;
      while (k < n && vars[k] != v) ++k;
      if (k == n) throw std::logic_error("variable outside the truth-table support");
      mask |= std::size_t{1} << k;
    }
    table[mask] ^= 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (x & (std::size_t{1} << k)) table[x] ^= table[x ^ (std::size_t{1} << k)];
    }
  }
  return table;
}

inline Poly2 random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, std::size_t max_terms) {
  Poly2 p;
  std::uniform_int_distribution<std::size_t> count(0, max_terms);
  const std::size_t terms = count(rng);
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<VarId> mono;
    for (VarId v : vars) {
      if (rng() % 3 == 0) mono.push_back(v);
    }
    p.toggle(Monomial(std::move(mono)));
  }
  return p;
}

// Replaces gate gi's kind with another of the same arity.
inline Netlist mutate(const Netlist& n, std::size_t gi, std::mt19937_64& rng) {
  static const std::vector<GateKind> binary{GateKind::And, GateKind::Or,  GateKind::Xor,
                                            GateKind::Nand, GateKind::Nor, GateKind::Xnor};
  NetlistBuilder builder;
  for (std::size_t k = 0; k < n.gates().size(); ++k) {
    const Gate& g = n.gates()[k];
    GateKind kind = g.kind;
    if (k == gi) {
      if (gate_arity(kind) == 1) {
        kind = kind == GateKind::Not ? GateKind::Buf : GateKind::Not;
      } else if (gate_arity(kind) == 0) {
        kind = kind == GateKind::Const0 ? GateKind::Const1 : GateKind::Const0;
      } else {
        while (kind == g.kind) kind = binary[rng() % binary.size()];
      }
    }
    std::vector<std::string> in;
    for (VarId v : g.inputs) in.push_back(n.name(v));
    builder.add_gate(n.name(g.out), kind, in);
  }
  return std::move(builder).build();
}

inline std::vector<VarId> var_range(std::size_t n, std::uint32_t first = 0) {
  std::vector<VarId> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(VarId{first + static_cast<std::uint32_t>(k)});
  return out;
}

}  // namespace gfre::testing
