#include "gfre/gf2x.hpp"

#include <bit>
#include <stdexcept>

namespace gfre {

Gf2x Gf2x::monomial(std::size_t k) {
  Gf2x p;
  p.flip(k);
  return p;
}

Gf2x Gf2x::from_exponents(std::span<const std::size_t> exponents) {
  Gf2x p;
  for (std::size_t e : exponents) p.flip(e);
  return p;
}

Gf2x Gf2x::from_bits(std::span<const std::uint8_t> bits) {
  Gf2x p;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) p.flip(k);
  }
  return p;
}

long Gf2x::degree() const noexcept {
  if (words_.empty()) return -1;
  const std::uint64_t top = words_.back();
  return static_cast<long>(64 * (words_.size() - 1) + 63 - std::countl_zero(top));
}

bool Gf2x::coeff(std::size_t k) const noexcept {
  const std::size_t w = k / 64;
  return w < words_.size() && ((words_[w] >> (k % 64)) & 1U);
}

void Gf2x::flip(std::size_t k) {
  const std::size_t w = k / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] ^= std::uint64_t{1} << (k % 64);
  trim();
}

std::vector<std::size_t> Gf2x::exponents() const {
  std::vector<std::size_t> out;
  for (long k = degree(); k >= 0; --k) {
    if (coeff(static_cast<std::size_t>(k))) out.push_back(static_cast<std::size_t>(k));
  }
  return out;
}

void Gf2x::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Gf2x& Gf2x::operator+=(const Gf2x& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
  trim();
  return *this;
}

Gf2x Gf2x::shifted(std::size_t k) const {
  if (words_.empty()) return {};
  Gf2x out;
  const std::size_t ws = k / 64;
  const unsigned bs = k % 64;
  out.words_.assign(words_.size() + ws + 1, 0);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w + ws] ^= words_[w] << bs;
    if (bs) out.words_[w + ws + 1] ^= words_[w] >> (64 - bs);
  }
  out.trim();
  return out;
}

Gf2x operator*(const Gf2x& p, const Gf2x& q) {
  Gf2x out;
  if (p.is_zero() || q.is_zero()) return out;
  out.words_.assign(p.words_.size() + q.words_.size(), 0);
  for (std::size_t i = 0; i < p.words_.size(); ++i) {
    for (std::uint64_t bits = p.words_[i]; bits; bits &= bits - 1) {
      const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
      for (std::size_t j = 0; j < q.words_.size(); ++j) {
        out.words_[i + j] ^= q.words_[j] << b;
        if (b) out.words_[i + j + 1] ^= q.words_[j] >> (64 - b);
      }
    }
  }
  out.trim();
  return out;
}

Gf2x Gf2x::operator%(const Gf2x& modulus) const {
  const long dm = modulus.degree();
  if (dm < 0) throw std::domain_error("polynomial division by zero");
  Gf2x r = *this;
  for (long d = r.degree(); d >= dm; d = r.degree()) r += modulus.shifted(static_cast<std::size_t>(d - dm));
  return r;
}

Gf2x gcd(Gf2x a, Gf2x b) {
  while (!b.is_zero()) {
    Gf2x r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Gf2x mulmod(const Gf2x& a, const Gf2x& b, const Gf2x& modulus) { return (a * b) % modulus; }

bool irreducible_by_trial_division(const Gf2x& p) {
  const long m = p.degree();
  if (m < 1) throw std::invalid_argument("irreducibility needs a polynomial of degree >= 1");
  if (m > 40) throw std::invalid_argument("trial division is limited to degree <= 40");
  // Degree <= 40 fits a machine word.
  std::uint64_t pw = 0;
  for (long k = 0; k <= m; ++k) {
    if (p.coeff(static_cast<std::size_t>(k))) pw |= std::uint64_t{1} << k;
  }
  auto rem = [](std::uint64_t x, std::uint64_t d) {
    const int dd = 63 - std::countl_zero(d);
    for (int dx = 63 - std::countl_zero(x); x && dx >= dd; dx = 63 - std::countl_zero(x)) x ^= d << (dx - dd);
    return x;
  };
  for (long deg = 1; deg <= m / 2; ++deg) {
    for (std::uint64_t d = std::uint64_t{1} << deg; d < (std::uint64_t{1} << (deg + 1)); ++d) {
      if (rem(pw, d) == 0) return false;
    }
  }
  return true;
}

bool irreducible_by_rabin(const Gf2x& p) {
  const long m = p.degree();
  if (m < 1) throw std::invalid_argument("irreducibility needs a polynomial of degree >= 1");
  const Gf2x x = Gf2x::monomial(1) % p;
  // powers[k] = x^(2^k) mod p
  std::vector<Gf2x> powers{x};
  for (long k = 1; k <= m; ++k) powers.push_back(mulmod(powers.back(), powers.back(), p));
  if (powers[static_cast<std::size_t>(m)] != x) return false;
  long n = m;
  for (long q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    while (n % q == 0) n /= q;
    const Gf2x h = powers[static_cast<std::size_t>(m / q)] + x;
    if (gcd(p, h).degree() != 0) return false;
  }
  return true;
}

}  // namespace gfre
