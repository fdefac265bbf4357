#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gfre/extractor.hpp"
#include "gfre/gfpoly.hpp"
#include "gfre/netlist.hpp"

namespace gfre {

// rows[k] lists (ascending) the output columns i where x^k mod P(x) has
// the term x^i, for k in [0, 2m-2].
struct ReductionMatrix {
  std::size_t m = 0;
  std::vector<std::vector<std::size_t>> rows;
};

ReductionMatrix reduction_matrix(std::size_t m, const IrrPoly& p);

// Expected expression of every output bit: the sum of the partial products
// s_k over all k whose reduction reaches that bit.
struct SpecExpressions {
  std::size_t m = 0;
  std::vector<Poly2> bits;
};

SpecExpressions spec_expressions(std::size_t m, const IrrPoly& p);

// XOR gates needed by the reduction stage: per column, terms - 1.
std::size_t xor_cost(const ReductionMatrix& rm);

struct MastrovitoOptions {
  // Build one XOR tree per s_k and let the columns reuse those wires.
  // When false every column gets its own flat tree over the AND outputs.
  bool share_partial_products = true;
};

// Two-stage multiplier: m^2 AND gates for a_i*b_j, then balanced XOR trees.
Netlist gen_mastrovito(std::size_t m, const IrrPoly& p, MastrovitoOptions options = {});

struct ObfuscationStats {
  std::size_t applied = 0;
};

// Functionally equivalent netlist obtained by `rewrite_budget` seeded local
// rewrites (inverter pairs, De Morgan, XOR/XNOR and AND/NAND swaps, XOR
// re-association, double-negation removal). Same seed, same result.
Netlist obfuscate(const Netlist& netlist, std::uint64_t seed, std::size_t rewrite_budget,
                  ObfuscationStats* stats = nullptr);

}  // namespace gfre
