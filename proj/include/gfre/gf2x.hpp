#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gfre {

// Dense univariate polynomial over GF(2), bit k = coefficient of x^k.
class Gf2x {
 public:
  Gf2x() = default;
  static Gf2x monomial(std::size_t k);
  static Gf2x from_exponents(std::span<const std::size_t> exponents);
  static Gf2x from_bits(std::span<const std::uint8_t> bits);  // bits[k] is the coefficient of x^k

  // -1 for the zero polynomial.
  long degree() const noexcept;
  bool is_zero() const noexcept { return words_.empty(); }
  bool coeff(std::size_t k) const noexcept;
  void flip(std::size_t k);
  std::vector<std::size_t> exponents() const;  // descending

  Gf2x& operator+=(const Gf2x& other);
  friend Gf2x operator+(Gf2x p, const Gf2x& q) { return p += q; }
  friend Gf2x operator*(const Gf2x& p, const Gf2x& q);
  Gf2x operator%(const Gf2x& modulus) const;
  Gf2x shifted(std::size_t k) const;

  friend bool operator==(const Gf2x&, const Gf2x&) = default;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

Gf2x gcd(Gf2x a, Gf2x b);
Gf2x mulmod(const Gf2x& a, const Gf2x& b, const Gf2x& modulus);

// Irreducibility over GF(2) by two independent routes. Both require
// degree >= 1. Trial division checks every polynomial of degree
// 1..deg/2 and is limited to degree <= 40.
bool irreducible_by_trial_division(const Gf2x& p);
// Rabin's test: x^(2^m) = x mod p and gcd(x^(2^(m/q)) - x, p) = 1 for
// every prime q dividing m.
bool irreducible_by_rabin(const Gf2x& p);

}  // namespace gfre
