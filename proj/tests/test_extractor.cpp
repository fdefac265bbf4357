#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "fixtures.hpp"
#include "gfre/extractor.hpp"
#include "gfre/generator.hpp"
#include "gfre/gf2x.hpp"
#include "gfre/rewriter.hpp"

using namespace gfre;
using gfre::testing::kTwoBitMultiplier;

namespace {

std::vector<std::string> rendered(const OutFieldSet& s) {
  std::vector<std::string> out;
  for (const auto& mono : s.products) out.push_back(render_expression(Poly2{mono}, s.m));
  return out;
}

// Number of irreducible polynomials of degree n over GF(2), by Moebius inversion.
long necklace_count(long n) {
  auto mobius = [](long d) {
    int sign = 1;
    for (long p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      sign = -sign;
    }
    return d > 1 ? -sign : sign;
  };
  long total = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0) total += mobius(d) * (1L << (n / d));
  }
  return total / n;
}

Gf2x from_mask(std::uint64_t mask) {
  std::vector<std::uint8_t> bits;
  for (; mask; mask >>= 1) bits.push_back(mask & 1U);
  return Gf2x::from_bits(bits);
}

ExtractionReport extract(const Netlist& n, unsigned threads = 2) { return extract_irreducible(rewrite_all(n, threads)); }

}  // namespace

TEST(IrrPoly, ParsesAndRenders) {
  const IrrPoly p = IrrPoly::parse("233,74,0");
  EXPECT_EQ(p.degree(), 233u);
  EXPECT_EQ(p.to_string(), "x^233 + x^74 + 1");
  EXPECT_EQ(p.exponent_list(), "233,74,0");
  EXPECT_EQ(IrrPoly({0, 1, 4}).to_string(), "x^4 + x + 1");
  EXPECT_THROW((void)IrrPoly::parse("4,1"), Error);
  EXPECT_THROW((void)IrrPoly::parse("1,4,0"), Error);
  EXPECT_THROW((void)IrrPoly::parse("4,,0"), Error);
  EXPECT_THROW((void)IrrPoly::parse("x^4+1"), Error);
  EXPECT_THROW((void)IrrPoly({4, 4, 0}), Error);
}

TEST(OutFieldSet, SmallWidths) {
  EXPECT_EQ(rendered(out_field_set(2)), (std::vector<std::string>{"a1*b1"}));
  EXPECT_EQ(rendered(out_field_set(4)), (std::vector<std::string>{"a3*b1", "a2*b2", "a1*b3"}));
  const OutFieldSet p8 = out_field_set(8);
  ASSERT_EQ(p8.products.size(), 7u);
  for (const auto& mono : p8.products) {
    ASSERT_EQ(mono.degree(), 2u);
    const std::size_t i = mono.vars()[0].value, j = mono.vars()[1].value - 8;
    EXPECT_EQ(i + j, 8u);
    EXPECT_GE(i, 1u);
    EXPECT_GE(j, 1u);
  }
  EXPECT_THROW((void)out_field_set(1), ExtractionError);
}

TEST(Extractor, TwoBitMultiplierGivesDegreeTwoField) {
  const ExtractionReport r = extract(Netlist::parse(kTwoBitMultiplier));
  EXPECT_EQ(r.recovered.to_string(), "x^2 + x + 1");
  EXPECT_EQ(r.membership, (std::vector<bool>{true, true}));
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Extractor, RecoversBothDegreeFourFields) {
  EXPECT_EQ(extract(gen_mastrovito(4, IrrPoly({4, 3, 0}))).recovered, IrrPoly({4, 3, 0}));
  EXPECT_EQ(extract(gen_mastrovito(4, IrrPoly({4, 1, 0}))).recovered, IrrPoly({4, 1, 0}));
  const ExtractionReport r = extract(gen_mastrovito(4, IrrPoly({4, 3, 0})));
  EXPECT_EQ(r.membership, (std::vector<bool>{true, false, false, true}));
}

TEST(Extractor, MembershipIsRecomputable) {
  const IrrPoly p({13, 4, 3, 1, 0});
  const RewriteReport rw = rewrite_all(obfuscate(gen_mastrovito(13, p), 5, 80), 2);
  const ExtractionReport r = extract_irreducible(rw);
  const OutFieldSet pm = out_field_set(13);
  for (std::size_t i = 0; i < 13; ++i) {
    bool all = true;
    std::size_t hits = 0;
    for (const auto& mono : pm.products) {
      const bool in = rw.bits[i].expr.contains(mono);
      all = all && in;
      hits += in;
    }
    EXPECT_EQ(r.membership[i], all);
    EXPECT_EQ(r.partial_hits[i], hits);
    EXPECT_EQ(r.membership[i], p.has(i));
  }
  EXPECT_EQ(r.recovered, p);
}

TEST(Extractor, LargeTrinomialRoundTrip) {
  const IrrPoly p({233, 74, 0});
  const auto start = std::chrono::steady_clock::now();
  const ExtractionReport r = extract(gen_mastrovito(233, p), std::max(4U, std::thread::hardware_concurrency()));
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(r.recovered, p);
  RecordProperty("seconds", std::to_string(secs));
}

TEST(Extractor, RejectsNonMultiplier) {
  // An adder-like netlist has no out-field products anywhere.
  const Netlist n = Netlist::parse("z0 = XOR(a0, b0)\nz1 = XOR(a1, b1)\nz2 = XOR(a2, b2)\n");
  try {
    (void)extract(n);
    FAIL() << "expected ExtractionError";
  } catch (const ExtractionError& e) {
    EXPECT_NE(std::string(e.what()).find("not recognized"), std::string::npos);
  }
}

TEST(Extractor, PartialHitsAreDiagnosed) {
  // Bit 0 holds one of the three out-field products, bit 1 holds all of them.
  const char* text = R"(q0 = AND(a3, b1)
q1 = AND(a2, b2)
q2 = AND(a1, b3)
w = XOR(q0, q1)
z1 = XOR(w, q2)
z0 = BUF(q0)
z2 = AND(a0, b0)
z3 = AND(a0, b0)
)";
  const ExtractionReport r = extract(Netlist::parse(text));
  EXPECT_EQ(r.recovered, IrrPoly({4, 1}));
  EXPECT_EQ(r.partial_hits[0], 1u);
  EXPECT_FALSE(r.membership[0]);
  bool partial = false, constant = false;
  for (const auto& w : r.warnings) {
    partial = partial || w.find("z0 holds only 1 of 3") != std::string::npos;
    constant = constant || w.find("constant term") != std::string::npos;
  }
  EXPECT_TRUE(partial);
  EXPECT_TRUE(constant);
}

TEST(Irreducibility, KnownCases) {
  EXPECT_TRUE(validate_irreducible(IrrPoly({2, 1, 0})));
  EXPECT_FALSE(validate_irreducible(IrrPoly({4, 2, 0})));  // (x^2+x+1)^2
  EXPECT_FALSE(validate_irreducible(IrrPoly({3, 0})));      // x^3+1 = (x+1)(x^2+x+1)
  EXPECT_TRUE(validate_irreducible(IrrPoly({4, 3, 0})));
  EXPECT_TRUE(validate_irreducible(IrrPoly({4, 1, 0})));
  EXPECT_FALSE(validate_irreducible(IrrPoly({8, 4, 3, 2})));
}

TEST(Irreducibility, StandardFieldPolynomials) {
  for (const char* text : {"64,21,19,4,0", "96,44,7,2,0", "163,80,47,9,0", "233,74,0", "283,12,7,5,0", "409,87,0",
                           "571,10,5,2,0"}) {
    const IrrPoly p = IrrPoly::parse(text);
    EXPECT_TRUE(validate_irreducible(p)) << text;
    EXPECT_TRUE(irreducible_by_rabin(p.to_gf2x())) << text;
  }
  // Product of two of them is not irreducible.
  const Gf2x prod = IrrPoly::parse("64,21,19,4,0").to_gf2x() * IrrPoly::parse("96,44,7,2,0").to_gf2x();
  EXPECT_FALSE(irreducible_by_rabin(prod));
}

TEST(Irreducibility, BothRoutesAgreeAndMatchCount) {
  for (long n = 1; n <= 12; ++n) {
    long count = 0;
    for (std::uint64_t low = 0; low < (std::uint64_t{1} << n); ++low) {
      const Gf2x p = from_mask((std::uint64_t{1} << n) | low);
      const bool trial = irreducible_by_trial_division(p);
      ASSERT_EQ(trial, irreducible_by_rabin(p)) << "mask " << low << " degree " << n;
      count += trial;
    }
    EXPECT_EQ(count, necklace_count(n)) << "degree " << n;
  }
}

TEST(Irreducibility, RoutesAgreeOnSparseDegreeTwenty) {
  for (std::size_t a = 19; a >= 1; --a) {
    const Gf2x p = IrrPoly({20, a, 0}).to_gf2x();
    EXPECT_EQ(irreducible_by_trial_division(p), irreducible_by_rabin(p)) << a;
  }
  EXPECT_TRUE(irreducible_by_trial_division(IrrPoly({20, 3, 0}).to_gf2x()));
}
