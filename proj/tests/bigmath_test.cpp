#include <random>

#include <gtest/gtest.h>

#include "qschmidt/bigmath.hpp"

namespace qschmidt {
namespace {

LaurentPoly P(Exponent min_exp, std::initializer_list<long long> c) { return LaurentPoly(min_exp, c); }

LaurentPoly random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 7);
  std::uniform_int_distribution<int> offset(-5, 5);
  std::uniform_int_distribution<long long> coeff(-9, 9);
  std::vector<BigInt> c(static_cast<std::size_t>(len(rng)));
  for (auto& x : c) x = coeff(rng);
  return LaurentPoly(offset(rng), std::move(c));
}

TEST(LaurentPoly, Add) {
  const auto a = P(-1, {1, 1});
  EXPECT_EQ(a + LaurentPoly(), a);
  const auto zero = P(0, {1, 1}) + P(0, {-1, -1});
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.min_exp(), 0);
  EXPECT_EQ(zero, LaurentPoly());
  EXPECT_EQ(a + P(0, {1, 1}), P(-1, {1, 2, 1}));
}

TEST(LaurentPoly, Multiply) {
  const auto p = P(-3, {2, 0, -1, 5});
  EXPECT_EQ(p * LaurentPoly::one(), p);
  EXPECT_EQ(P(0, {1, 1}) * P(0, {1, 1}), P(0, {1, 2, 1}));
  EXPECT_EQ(P(-1, {1, 1}) * LaurentPoly::monomial(1), P(0, {1, 1}));
  EXPECT_EQ((p * P(2, {1, 1})).min_exp(), -1);
  EXPECT_TRUE((p * LaurentPoly()).is_zero());
}

TEST(LaurentPoly, Shift) {
  EXPECT_EQ(P(0, {1, 1}).shift(-1), P(-1, {1, 1}));
  EXPECT_EQ(LaurentPoly().shift(5), LaurentPoly());
  EXPECT_EQ(LaurentPoly().shift(5).min_exp(), 0);
  EXPECT_EQ(P(-1, {1, 1}).shift(1), P(0, {1, 1}));
}

TEST(LaurentPoly, EvalOne) {
  EXPECT_EQ(LaurentPoly().eval_one(), 0);
  EXPECT_EQ(P(0, {1, 2, 1}).eval_one(), 4);
  EXPECT_EQ(P(-2, {3, -1}).eval_one(), 2);
}

TEST(LaurentPoly, Reverse) {
  EXPECT_EQ(P(0, {1, 1}).reverse(), P(-1, {1, 1}));
  EXPECT_EQ(LaurentPoly().reverse(), LaurentPoly());
  const auto p = P(0, {1, 3, 0, 0, 1});
  EXPECT_EQ(p.reverse().reverse(), p);
  EXPECT_EQ(P(2, {1, 2}).reverse(), P(-3, {2, 1}));
}

TEST(LaurentPoly, Nonneg) {
  EXPECT_TRUE(P(0, {1, 1}).nonneg());
  EXPECT_FALSE(P(0, {1, -1}).nonneg());
  EXPECT_TRUE(LaurentPoly().nonneg());
}

TEST(LaurentPoly, IsPolynomial) {
  EXPECT_TRUE(LaurentPoly().is_polynomial());
  EXPECT_TRUE(P(0, {1}).is_polynomial());
  EXPECT_FALSE(P(-1, {1, 1}).is_polynomial());
}

TEST(LaurentPoly, CanonicalizationIsIdempotent) {
  const auto expected = P(1, {3, 0, -2});
  EXPECT_EQ(P(0, {0, 3, 0, -2}), expected);
  EXPECT_EQ(P(-2, {0, 0, 0, 3, 0, -2, 0, 0}), expected);
  EXPECT_EQ(LaurentPoly(expected.min_exp(), {expected.coeffs().begin(), expected.coeffs().end()}), expected);
  EXPECT_EQ(P(7, {0, 0}), LaurentPoly());
  EXPECT_EQ(P(7, {0, 0}).min_exp(), 0);
}

TEST(LaurentPoly, Pow) {
  EXPECT_EQ(P(0, {1, 1}).pow(0), LaurentPoly::one());
  EXPECT_EQ(P(0, {1, 1}).pow(3), P(0, {1, 3, 3, 1}));
  EXPECT_EQ(P(-1, {1}).pow(4), P(-4, {1}));
}

TEST(LaurentPoly, HumanRendering) {
  EXPECT_EQ(P(-1, {1, 2, 1}).str(), "q^-1 + 2 + q");
  EXPECT_EQ(P(0, {1, 2, 1}).str(), "1 + 2q + q^2");
  EXPECT_EQ(P(0, {1, -1, -1, 1}).str(), "1 - q - q^2 + q^3");
  EXPECT_EQ(P(-2, {-3}).str(), "-3q^-2");
  EXPECT_EQ(LaurentPoly().str(), "0");
  EXPECT_EQ(P(1, {-1}).str(), "-q");
}

TEST(LaurentPoly, JsonUsesDecimalStrings) {
  const BigInt big = boost::multiprecision::pow(BigInt(10), 520) + 7;
  const LaurentPoly p(-3, {big, BigInt(0), BigInt(-2)});
  const nlohmann::json j = p;
  EXPECT_EQ(j.at("min_exp"), -3);
  EXPECT_EQ(j.at("coeffs")[0].get<std::string>(), big.str());
  EXPECT_EQ(j.at("coeffs")[2].get<std::string>(), "-2");
  EXPECT_EQ(j.get<LaurentPoly>(), p);
}

TEST(LaurentPoly, JsonRoundTripProperty) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const auto p = random_poly(rng);
    EXPECT_EQ(nlohmann::json::parse(nlohmann::json(p).dump()).get<LaurentPoly>(), p);
  }
}

TEST(LaurentPoly, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(12345);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_poly(rng);
    const auto b = random_poly(rng);
    const auto c = random_poly(rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a - a, LaurentPoly());
    ASSERT_EQ((a * b).eval_one(), a.eval_one() * b.eval_one());
    ASSERT_EQ((a + b).eval_one(), a.eval_one() + b.eval_one());
    ASSERT_EQ((a * b).reverse(), a.reverse() * b.reverse());
    ASSERT_EQ((a + b).reverse(), a.reverse() + b.reverse());
    ASSERT_EQ(a.reverse().reverse(), a);
  }
}

TEST(BigRat, StaysReduced) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> dist(-1000, 1000);
  for (int t = 0; t < 500; ++t) {
    const long long n1 = dist(rng);
    const long long d1 = dist(rng);
    const long long n2 = dist(rng);
    const long long d2 = dist(rng);
    if (d1 == 0 || d2 == 0) continue;
    const BigRat x = BigRat(n1) / d1;
    const BigRat y = BigRat(n2) / d2;
    for (const BigRat& z : std::vector<BigRat>{x + y, x - y, x * y}) {
      ASSERT_GT(denominator(z), 0);
      ASSERT_EQ(gcd(numerator(z), denominator(z)), numerator(z) == 0 ? denominator(z) : BigInt(1));
    }
    if (y != 0) {
      const BigRat q = x / y;
      ASSERT_GT(denominator(q), 0);
      ASSERT_EQ(q * y, x);
    }
  }
}

TEST(BigRat, IntegerAndStringForm) {
  EXPECT_TRUE(is_integer(BigRat(10, 5)));
  EXPECT_FALSE(is_integer(BigRat(343, 5)));
  EXPECT_EQ(rat_to_string(BigRat(4, 2)), "2/1");
  EXPECT_EQ(rat_to_string(BigRat(-6, 4)), "-3/2");
  EXPECT_EQ(rat_from_string("-3/2"), BigRat(-3, 2));
  EXPECT_EQ(rat_from_string("17"), BigRat(17));
  EXPECT_EQ(rat_from_string("3/-6"), BigRat(-1, 2));
  EXPECT_THROW(rat_from_string("1/0"), std::invalid_argument);
}

TEST(Choose2, Values) {
  EXPECT_EQ(choose2(0), 0);
  EXPECT_EQ(choose2(1), 0);
  EXPECT_EQ(choose2(2), 1);
  EXPECT_EQ(choose2(5), 10);
}

}  // namespace
}  // namespace qschmidt
