#include <gtest/gtest.h>

#include "morita/faults.hpp"
#include "morita/valuation.hpp"
#include "samplers.hpp"

using namespace morita;
using morita::testing::Sampler;

namespace {

FieldElement P(const FieldPtr& f, const char* s) { return parse_element(f, s); }

struct ConicSetup {
  FieldPtr k, kx, conic;
  ValuationPtr base, gauss, tilde;
};

// (-1, s) over Q(s) at Gauss p: the residue algebra (-1, s) over F_p(s) is
// division when -1 is a nonsquare, so the residue conic has no point.
ConicSetup division_setup(long p) {
  ConicSetup c;
  c.k = Field::function(Field::rationals(), "s");
  c.base = Valuation::gauss(Valuation::padic(p), c.k);
  c.conic = Field::conic(c.k, from_integer(c.k, -1L), symbol(c.k, "s"));
  c.kx = c.conic->rational_function_field();
  c.gauss = Valuation::gauss(c.base, c.kx);
  c.tilde = Valuation::conic_half_norm(c.gauss, c.conic, ResidueConic::Nonsplit);
  return c;
}

// Independent oracle: for a1 y + a2 x + a3 with a_i in K,
// Norm = (a2^2 + (d/t) a1^2) x^2 + 2 a2 a3 x + (a3^2 - a1^2/t).
std::int64_t linear_value_oracle(const ConicSetup& c, const FieldElement& a1, const FieldElement& a2,
                                 const FieldElement& a3) {
  const auto& d = c.conic->conic_d();
  const auto& t = c.conic->conic_t();
  const FieldElement coeffs[] = {a3 * a3 - a1 * a1 / t, from_integer(c.k, 2L) * a2 * a3, a2 * a2 + d / t * a1 * a1};
  std::int64_t best = kInfiniteValue;
  for (const auto& e : coeffs)
    if (!e.is_zero()) best = std::min(best, c.base->value(e));
  EXPECT_EQ(best % 2, 0);
  return best / 2;
}

}  // namespace

TEST(Valuation, HalfIntegerText) {
  EXPECT_EQ(HalfInteger::from_doubled(1).to_string(), "1/2");
  EXPECT_EQ(HalfInteger::from_doubled(-3).to_string(), "-3/2");
  EXPECT_EQ(HalfInteger::from_doubled(4).to_string(), "2");
  EXPECT_EQ(HalfInteger::from_doubled(1) + HalfInteger::from_doubled(1), HalfInteger::from_integer(1));
}

TEST(Valuation, PAdicValuesAndResidue) {
  auto v = Valuation::padic(3);
  auto q = Field::rationals();
  EXPECT_EQ(v->value(P(q, "18/5")), 2);
  EXPECT_EQ(v->value(P(q, "5/27")), -3);
  EXPECT_EQ(v->value(zero(q)), kInfiniteValue);
  EXPECT_EQ(v->residue(P(q, "5/2")).as_residue(), 1);
  EXPECT_TRUE(v->residue(P(q, "3/2")).is_zero());
  try {
    v->residue(P(q, "1/3"));
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), Errc::NegativeValue);
  }
  EXPECT_THROW(Valuation::padic(2), MathError);
}

TEST(Valuation, GaussValues) {
  auto kx = Field::function(Field::rationals(), "x");
  auto v = Valuation::gauss(Valuation::padic(3), kx);
  EXPECT_EQ(v->value(P(kx, "3*x^2 + 9")), 1);
  EXPECT_EQ(v->value(P(kx, "(x + 3)/3")), -1);
  EXPECT_EQ(v->value(P(kx, "x")), 0);
  EXPECT_EQ(v->value(v->uniformizer()), 1);
  EXPECT_EQ(v->residue_field()->describe(), "F3(x)");
}

TEST(Valuation, GaussResidueCoefficientwise) {
  auto kx = Field::function(Field::rationals(), "x");
  auto v = Valuation::gauss(Valuation::padic(3), kx);
  auto r = v->residue(P(kx, "(x + 3)/(2*x)"));
  EXPECT_EQ(r, from_integer(v->residue_field(), 2L));
  // Oracle: scale numerator and denominator by 3^-v(den) and reduce mod 3.
  auto r2 = v->residue(P(kx, "(6*x^2 + 3)/(9*x + 3)"));
  EXPECT_EQ(r2, P(v->residue_field(), "(2*x^2 + 1)/1"));
}

TEST(Valuation, ConicValueExamples) {
  auto c = division_setup(3);
  auto y = symbol(c.conic, "y");
  EXPECT_EQ(c.tilde->value(y), 0);
  EXPECT_EQ(c.tilde->value(P(c.conic, "3*y + x + 6")), 0);
  EXPECT_EQ(c.tilde->value(P(c.conic, "3*y + 3*x + 9")), 1);
  EXPECT_EQ(linear_value_oracle(c, from_integer(c.k, 3L), from_integer(c.k, 3L), from_integer(c.k, 9L)), 1);
  EXPECT_EQ(c.tilde->value(c.tilde->uniformizer()), 1);
}

TEST(Valuation, ConicNeedsUnitParameters) {
  auto q = Field::rationals();
  auto conic = Field::conic(q, from_integer(q, 3L), one(q));
  auto g = Valuation::gauss(Valuation::padic(3), conic->rational_function_field());
  try {
    Valuation::conic_half_norm(g, conic);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), Errc::RamifiedParameters);
  }
}

TEST(Valuation, ConicResidueSatisfiesRelation) {
  auto c = division_setup(3);
  auto ybar = c.tilde->residue(symbol(c.conic, "y"));
  auto xbar = c.tilde->residue(symbol(c.conic, "x"));
  const auto& res = c.tilde->residue_field();
  EXPECT_EQ(ybar, symbol(res, "y"));
  EXPECT_TRUE((embed(res, res->conic_d()) * xbar * xbar + embed(res, res->conic_t()) * ybar * ybar).is_one());
  EXPECT_EQ(res->conic_d().to_string(), "2");
  EXPECT_EQ(res->conic_t().to_string(), "s");
}

TEST(ValuationProperty, AxiomsOnSamples) {
  for (long p : {3L, 5L, 7L}) {
    Sampler rng(100 + p, p);
    auto kx = Field::function(Field::rationals(), "x");
    auto g = Valuation::gauss(Valuation::padic(p), kx);
    for (int i = 0; i < 300; ++i) {
      auto a = rng.nonzero(kx);
      auto b = rng.nonzero(kx);
      const auto va = g->value(a), vb = g->value(b);
      EXPECT_EQ(g->value(a * b), va + vb);
      const auto s = a + b;
      if (!s.is_zero()) {
        EXPECT_GE(g->value(s), std::min(va, vb));
        if (va != vb) EXPECT_EQ(g->value(s), std::min(va, vb));
      }
    }
  }
}

TEST(ValuationProperty, ResidueIsRingMap) {
  Sampler rng(5, 3);
  auto kx = Field::function(Field::rationals(), "x");
  auto g = Valuation::gauss(Valuation::padic(3), kx);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    auto a = rng.element(kx);
    auto b = rng.element(kx);
    if ((!a.is_zero() && g->value(a) < 0) || (!b.is_zero() && g->value(b) < 0)) continue;
    EXPECT_EQ(g->residue(a + b), g->residue(a) + g->residue(b));
    EXPECT_EQ(g->residue(a * b), g->residue(a) * g->residue(b));
    EXPECT_EQ(g->residue(a).is_zero(), a.is_zero() || g->value(a) > 0);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(ValuationProperty, ConicRestrictsToGauss) {
  auto c = division_setup(5);
  Sampler rng(11, 5);
  for (int i = 0; i < 100; ++i) {
    auto f = rng.nonzero(c.kx, 1);
    EXPECT_EQ(c.tilde->value(embed(c.conic, f)), c.gauss->value(f));
  }
}

TEST(ValuationProperty, FastPathMatchesNorm) {
  auto c = division_setup(3);
  Sampler rng(12, 3);
  for (int i = 0; i < 100; ++i) {
    auto e = rng.nonzero(c.conic, 1);
    EXPECT_EQ(c.tilde->value(e), c.tilde->value_via_norm(e)) << e.to_string();
  }
}

TEST(ValuationProperty, LinearUnitCriterion) {
  auto c = division_setup(7);
  Sampler rng(13, 7);
  int units = 0, nonunits = 0;
  for (int i = 0; i < 100; ++i) {
    FieldElement a[3];
    for (auto& e : a) e = from_integer(c.k, rng.integer(-9, 9) * (rng.integer(0, 3) == 0 ? 7 : 1));
    if (a[0].is_zero() && a[1].is_zero() && a[2].is_zero()) continue;
    auto e = embed(c.conic, a[0]) * symbol(c.conic, "y") + embed(c.conic, a[1]) * symbol(c.conic, "x") +
             embed(c.conic, a[2]);
    std::int64_t m = kInfiniteValue;
    for (auto& x : a)
      if (!x.is_zero()) m = std::min(m, c.base->value(x));
    EXPECT_EQ(c.tilde->value(e) == 0, m == 0);
    EXPECT_EQ(c.tilde->value(e), linear_value_oracle(c, a[0], a[1], a[2]));
    (m == 0 ? units : nonunits)++;
  }
  EXPECT_GT(units, 0);
  EXPECT_GT(nonunits, 0);
}

TEST(ValuationFault, NegatedFastPathChangesValues) {
  auto c = division_setup(3);
  faults::Scoped guard(faults::negate_fast_path);
  EXPECT_EQ(c.tilde->value(c.tilde->uniformizer()), -1);
}
