#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gfre/gf2x.hpp"
#include "gfre/gfpoly.hpp"
#include "gfre/rewriter.hpp"

namespace gfre {

// Field polynomial given by its exponent set. Always contains x^m; the
// constant term is checked by callers that need a legal field polynomial.
class IrrPoly {
 public:
  // Exponents in any order; duplicates are rejected. Requires degree >= 2.
  explicit IrrPoly(std::vector<std::size_t> exponents);

  // "233,74,0": strictly descending list, leading exponent m, trailing 0.
  static IrrPoly parse(std::string_view exponent_list);

  std::size_t degree() const noexcept { return exponents_.front(); }
  std::span<const std::size_t> exponents() const noexcept { return exponents_; }  // descending
  bool has(std::size_t e) const;
  bool has_constant_term() const { return has(0); }
  Gf2x to_gf2x() const { return Gf2x::from_exponents(exponents_); }

  std::string to_string() const;       // "x^4 + x + 1"
  std::string exponent_list() const;   // "4,1,0"

  friend bool operator==(const IrrPoly&, const IrrPoly&) = default;

 private:
  std::vector<std::size_t> exponents_;
};

// Products a_i*b_j with i + j = m, the first products that do not fit in m
// bits and are folded back by the field polynomial.
struct OutFieldSet {
  std::size_t m = 0;
  std::vector<Monomial> products;  // a_{m-1}b_1, a_{m-2}b_2, ..., a_1b_{m-1}
};

OutFieldSet out_field_set(std::size_t m);

struct ExtractionReport {
  IrrPoly recovered{std::vector<std::size_t>{2, 0}};
  std::vector<bool> membership;        // bit i holds every out-field product
  std::vector<std::size_t> partial_hits;  // out-field products present per bit
  std::vector<std::string> warnings;
};

// Reads the field polynomial off the per-bit expressions: x^i is a term iff
// expression i contains every out-field product. Throws ExtractionError if
// no bit qualifies.
ExtractionReport extract_irreducible(const RewriteReport& report);

// Trial division up to degree 20, Rabin's test above.
bool validate_irreducible(const IrrPoly& p);

}  // namespace gfre
