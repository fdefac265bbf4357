#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "gfre/gfpoly.hpp"
#include "gfre/netlist.hpp"

namespace gfre {

struct RewriteStats {
  std::size_t steps = 0;           // substitutions performed (= cone gate count)
  std::size_t peak_monomials = 0;  // largest intermediate polynomial
  std::chrono::nanoseconds wall_time{0};
};

// Canonical input-side expression of one output bit.
struct BitExpression {
  std::size_t bit = 0;
  Poly2 expr;  // over primary-input ids only
  RewriteStats stats;
};

struct RewriteReport {
  std::size_t m = 0;
  std::vector<BitExpression> bits;  // indexed by output bit
  std::chrono::nanoseconds total_time{0};
  unsigned threads = 1;
};

// Backward rewriting of z_i: starting from the single variable z_i, every
// gate of the output's cone is substituted by its algebraic model in
// reverse topological order, cancelling monomials mod 2 as they appear.
BitExpression rewrite_bit(const Netlist& netlist, std::size_t bit);

// Rewrites all output bits on `threads` workers. Results do not depend on
// the thread count or the schedule. Errors are rethrown with the bit index.
RewriteReport rewrite_all(const Netlist& netlist, unsigned threads);

// Renders an expression with a<i>/b<j> names.
std::string render_expression(const Poly2& expr, std::size_t m);

}  // namespace gfre
