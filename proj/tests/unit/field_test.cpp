#include <gtest/gtest.h>

#include <random>

#include "morita/field.hpp"

using namespace morita;

namespace {

FieldElement P(const FieldPtr& f, const char* s) { return parse_element(f, s); }

FieldPtr qs() { return Field::function(Field::rationals(), "s"); }

}  // namespace

TEST(FieldArith, RationalSum) {
  auto q = Field::rationals();
  EXPECT_EQ(P(q, "2/3") + P(q, "1/6"), P(q, "5/6"));
  EXPECT_EQ((P(q, "2/3") + P(q, "1/6")).to_string(), "5/6");
}

TEST(FieldArith, FiniteInverse) {
  auto f5 = Field::finite(5);
  EXPECT_EQ(from_integer(f5, 2L).inverse().as_residue(), 3);
  EXPECT_EQ(P(f5, "-1").as_residue(), 4);
  EXPECT_EQ(P(f5, "1/2").as_residue(), 3);
}

TEST(FieldArith, EvenCharacteristicRejected) {
  try {
    Field::finite(2);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), Errc::EvenResidueChar);
  }
  EXPECT_THROW(Field::finite(9), MathError);
}

TEST(FieldArith, ConicRelation) {
  auto q = Field::rationals();
  auto k = Field::conic(q, from_integer(q, 2L), from_integer(q, 3L));
  auto y = symbol(k, "y");
  auto yy = y * y;
  EXPECT_TRUE(yy.conic_b().is_zero());
  EXPECT_EQ(yy, P(k, "(1 - 2*x^2)/3"));
  auto x = symbol(k, "x");
  EXPECT_TRUE((from_integer(k, 2L) * x * x + from_integer(k, 3L) * y * y).is_one());
}

TEST(FieldArith, LevelMismatch) {
  auto q = Field::rationals();
  auto f5 = Field::finite(5);
  try {
    (void)(one(q) + one(f5));
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), Errc::LevelMismatch);
  }
  EXPECT_THROW(zero(q).inverse(), MathError);
}

TEST(FieldArith, RationalFunctionCanonicalForm) {
  auto f = qs();
  auto e = P(f, "(2*s^2 - 2)/(4*s + 4)");
  EXPECT_EQ(e, P(f, "(s - 1)/2"));
  EXPECT_TRUE(e.denominator().is_one());
  auto g = P(f, "(s + 1)/(3*s^2)");
  EXPECT_TRUE(g.denominator().leading().is_one());
  EXPECT_EQ(g.to_string(), "(1/3*s + 1/3)/s^2");
  EXPECT_EQ(P(f, "s - s"), zero(f));
}

TEST(FieldArith, PrintParseRoundTrip) {
  auto q = Field::rationals();
  auto qs_ = qs();
  auto k = Field::conic(qs_, from_integer(qs_, -1L), symbol(qs_, "s"));
  for (const char* text : {"3*y + x + 6", "(x + s)/(x - 1) + (s/(s + 1))*y", "-y", "s*x^2 - 1/2", "0", "1",
                           "y/(x + 1)", "(2*s + 1)*x - y", "x^-2 + s^-1*y"}) {
    auto e = P(k, text);
    auto round = P(k, e.to_string().c_str());
    EXPECT_EQ(e, round) << text << " -> " << e.to_string();
    EXPECT_EQ(e.to_string(), round.to_string());
  }
  EXPECT_EQ(P(q, "2^-3").to_string(), "1/8");
}

TEST(FieldArith, ParseErrors) {
  auto q = Field::rationals();
  for (const char* bad : {"2 +", "(1", "z", "1/0", "2^", "3 $ 4"}) {
    try {
      P(q, bad);
      FAIL() << bad;
    } catch (const MathError& e) {
      EXPECT_EQ(e.code(), Errc::ParseError) << bad;
    }
  }
}

TEST(FieldArith, ImplicitProduct) {
  auto f = qs();
  EXPECT_EQ(P(f, "3s + 2(s - 1)"), P(f, "5*s - 2"));
}

TEST(FieldArith, SquareRoots) {
  auto q = Field::rationals();
  EXPECT_EQ(*sqrt(P(q, "9/4")), P(q, "3/2"));
  EXPECT_FALSE(sqrt(P(q, "2")).has_value());
  EXPECT_FALSE(sqrt(P(q, "-1")).has_value());
  for (std::int64_t p : {3, 5, 7, 13, 17, 97}) {
    auto f = Field::finite(p);
    int squares = 0;
    for (std::int64_t a = 1; a < p; ++a) {
      auto r = sqrt(from_integer(f, a));
      if (r) {
        ++squares;
        EXPECT_EQ(r->square().as_residue(), a);
      }
    }
    EXPECT_EQ(squares, (p - 1) / 2);
  }
  auto f = qs();
  EXPECT_EQ(sqrt(P(f, "4*(s + 1)^2/s^4"))->square(), P(f, "4*(s + 1)^2/s^4"));
  EXPECT_FALSE(sqrt(P(f, "s")).has_value());
  auto k = Field::conic(q, one(q), one(q));
  auto e = P(k, "(x + 2*y + 3)^2");
  auto r = sqrt(e);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->square(), e);
  EXPECT_EQ(sqrt(P(k, "y^2"))->square(), P(k, "y^2"));
  EXPECT_FALSE(sqrt(P(k, "y")).has_value());
}

TEST(FieldArith, StructuralFieldEquality) {
  auto a = qs();
  auto b = qs();
  EXPECT_TRUE(same_field(a, b));
  EXPECT_EQ(symbol(a, "s"), symbol(b, "s"));
  auto q = Field::rationals();
  EXPECT_FALSE(same_field(Field::conic(q, one(q), one(q)), Field::conic(q, one(q), from_integer(q, 2L))));
}

TEST(FieldArith, FieldAxiomsOnSamples) {
  auto f = qs();
  auto k = Field::conic(f, from_integer(f, -1L), symbol(f, "s"));
  auto pool = small_elements(k, 2, 1);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    const auto& c = pool[pick(rng)];
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a + b, b + a);
    if (!a.is_zero()) EXPECT_TRUE((a * a.inverse()).is_one());
    // Canonicalizing twice changes nothing.
    EXPECT_EQ(P(k, a.to_string().c_str()).to_string(), a.to_string());
  }
}
