#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gfre/netlist.hpp"

namespace gfre {

// Square-free product of Boolean variables. The empty product is 1.
class Monomial {
 public:
  Monomial() { rehash(); }
  // Sorts and removes duplicates (x*x = x).
  explicit Monomial(std::vector<VarId> vars);
  Monomial(std::initializer_list<VarId> vars) : Monomial(std::vector<VarId>(vars)) {}

  static Monomial one() { return Monomial{}; }

  std::span<const VarId> vars() const noexcept { return vars_; }
  std::size_t degree() const noexcept { return vars_.size(); }
  bool is_one() const noexcept { return vars_.empty(); }
  bool contains(VarId v) const;
  // Largest variable; precondition: !is_one().
  VarId last() const { return vars_.back(); }

  Monomial without(VarId v) const;
  // Union of the variable sets.
  Monomial operator*(const Monomial& other) const;

  std::size_t hash() const noexcept { return hash_; }

  friend bool operator==(const Monomial& x, const Monomial& y) noexcept {
    return x.hash_ == y.hash_ && x.vars_ == y.vars_;
  }
  friend bool operator<(const Monomial& x, const Monomial& y) noexcept {
    if (x.vars_.size() != y.vars_.size()) return x.vars_.size() < y.vars_.size();
    return x.vars_ < y.vars_;
  }

 private:
  struct Sorted {};
  Monomial(Sorted, std::vector<VarId> vars);
  void rehash() noexcept;

  std::vector<VarId> vars_;
  std::size_t hash_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

// Polynomial over GF(2) in Boolean variables: a set of monomials, each with
// implicit coefficient 1. The empty set is the zero polynomial.
class Poly2 {
 public:
  using Terms = std::unordered_set<Monomial, MonomialHash>;

  Poly2() = default;
  Poly2(std::initializer_list<Monomial> terms);

  static Poly2 zero() { return {}; }
  static Poly2 one() { return Poly2{Monomial::one()}; }
  static Poly2 var(VarId v) { return Poly2{Monomial{v}}; }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool contains(const Monomial& m) const { return terms_.contains(m); }
  const Terms& terms() const noexcept { return terms_; }

  // Adds one monomial mod 2: inserts it if absent, cancels it if present.
  void toggle(const Monomial& m);
  void toggle(Monomial&& m);

  Poly2& operator+=(const Poly2& other);
  friend Poly2 operator+(Poly2 p, const Poly2& q) { return p += q; }
  friend Poly2 operator*(const Poly2& p, const Poly2& q);

  // Monomials in deterministic (degree, then id) order.
  std::vector<Monomial> sorted() const;

  friend bool operator==(const Poly2& p, const Poly2& q) { return p.terms_ == q.terms_; }

 private:
  Terms terms_;
};

// Algebraic model of a gate over polynomial inputs. N-ary inputs are folded
// left for AND/OR/XOR and their inverted forms (NAND/NOR/XNOR invert the
// final result). Throws Error on arity mismatch.
Poly2 gate_to_poly(GateKind kind, std::span<const Poly2> inputs);

// Replaces every occurrence of v in f by g. Requires that g does not mention v.
Poly2 substitute(const Poly2& f, VarId v, const Poly2& g);

using Assignment = std::unordered_map<VarId, bool>;

// Throws Error if a variable of f is missing from the assignment.
bool evaluate(const Poly2& f, const Assignment& assignment);

// Canonical rendering: variables within a monomial and the monomials
// themselves sorted lexicographically by name, "*" and " + " as separators,
// "0" / "1" for the constants.
std::string to_string(const Poly2& f, const std::function<std::string(VarId)>& name);

}  // namespace gfre
