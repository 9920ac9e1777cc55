#include <gtest/gtest.h>

#include "morita/faults.hpp"
#include "morita/quaternion.hpp"
#include "samplers.hpp"

using namespace morita;
using morita::testing::Sampler;

namespace {

FieldElement P(const FieldPtr& f, const char* s) { return parse_element(f, s); }

QuaternionAlgebra alg(const FieldPtr& f, const char* d, const char* t) { return QuaternionAlgebra(f, P(f, d), P(f, t)); }

Quaternion quat(const QuaternionAlgebra& q, long w, long a, long b, long c) {
  const auto& f = q.base();
  return Quaternion(q, from_integer(f, w), from_integer(f, a), from_integer(f, b), from_integer(f, c));
}

Quaternion random_quaternion(Sampler& rng, const QuaternionAlgebra& q) {
  const auto& f = q.base();
  return Quaternion(q, rng.element(f), rng.element(f), rng.element(f), rng.element(f));
}

// Legendre symbol by Euler's criterion on machine integers.
int legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  long r = 1, e = (p - 1) / 2, b = a;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Textbook Hilbert symbol (a, b)_p for odd p and nonzero integers.
int hilbert_symbol(long a, long b, long p) {
  int alpha = 0, beta = 0;
  while (a % p == 0) a /= p, ++alpha;
  while (b % p == 0) b /= p, ++beta;
  int sign = (alpha * beta % 2 == 1 && (p - 1) / 2 % 2 == 1) ? -1 : 1;
  if (beta % 2) sign *= legendre(a, p);
  if (alpha % 2) sign *= legendre(b, p);
  return sign;
}

// Primitive zero of z^2 - a x^2 - b y^2 modulo p^k, by exhaustion.
bool norm_zero_mod(long a, long b, long p, int k) {
  long m = 1;
  for (int r = 0; r < k; ++r) m *= p;
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y)
      for (long z = 0; z < m; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (((z * z - a * x * x - b * y * y) % m + m) % m == 0) return true;
      }
  return false;
}

}  // namespace

TEST(Quaternion, DefiningRelations) {
  auto q = alg(Field::rationals(), "2", "3");
  auto i = Quaternion::i(q), j = Quaternion::j(q);
  EXPECT_EQ(i * j, Quaternion::ij(q));
  EXPECT_EQ(j * i, -Quaternion::ij(q));
  EXPECT_EQ((i + j) * (i + j), quat(q, 5, 0, 0, 0));
  EXPECT_EQ((quat(q, 1, 1, 0, 0).conj() * quat(q, 1, 1, 0, 0)), quat(q, -1, 0, 0, 0));
  EXPECT_EQ((i * j).to_string(), "ij");
  EXPECT_EQ(quat(q, 1, -2, 0, 3).to_string(), "1 - 2*i + 3*ij");
}

TEST(Quaternion, AlgebraMismatch) {
  auto a = alg(Field::rationals(), "2", "3");
  auto b = alg(Field::rationals(), "2", "5");
  try {
    (void)(Quaternion::i(a) * Quaternion::i(b));
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), Errc::AlgebraMismatch);
  }
}

TEST(Quaternion, ReducedNorm) {
  auto q = alg(Field::rationals(), "2", "3");
  EXPECT_EQ(quat(q, 0, 1, 1, 0).nrd(), from_integer(q.base(), -5L));
  EXPECT_TRUE(quat(q, 1, 0, 0, 0).nrd().is_one());
  auto u = quat(q, 1, 1, 0, 0) * quat(q, 1, 0, 1, 0);
  EXPECT_EQ(u.nrd(), from_integer(q.base(), 2L));
  const auto det = determinant(q.base(), left_regular(u));
  EXPECT_EQ(det, u.nrd() * u.nrd());
}

TEST(Quaternion, ExtendedValuation) {
  auto q = alg(Field::rationals(), "2", "5");
  auto v = Valuation::padic(5);
  EXPECT_EQ(extval(Quaternion::i(q), *v), HalfInteger::from_integer(0));
  EXPECT_EQ(extval(Quaternion::j(q), *v), HalfInteger::from_doubled(1));
  EXPECT_EQ(extval(quat(q, 0, 5, 0, 0), *v), HalfInteger::from_integer(1));
  try {
    extval(Quaternion::zero(q), *v);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), Errc::ZeroElement);
  }
}

TEST(QuaternionProperty, NormMultiplicativeAndInvolution) {
  for (auto [d, t] : {std::pair{"2", "3"}, {"-1", "7"}, {"5/3", "-6"}}) {
    auto q = alg(Field::rationals(), d, t);
    auto v = Valuation::padic(3);
    Sampler rng(70, 3);
    for (int k = 0; k < 170; ++k) {
      auto x = random_quaternion(rng, q), y = random_quaternion(rng, q);
      EXPECT_EQ((x * y).nrd(), x.nrd() * y.nrd());
      EXPECT_EQ(x.conj().conj(), x);
      EXPECT_EQ((x * y).conj(), y.conj() * x.conj());
      const auto nx = x.nrd(), ny = y.nrd();
      if (!nx.is_zero() && !ny.is_zero()) EXPECT_EQ(extval(x * y, *v), extval(x, *v) + extval(y, *v));
    }
  }
}

TEST(Ramification, UnitSlots) {
  auto q = alg(Field::rationals(), "2", "3");
  auto r = ramification(q, *Valuation::padic(7));
  EXPECT_EQ(r.status, RamificationStatus::Unramified);
  ASSERT_TRUE(r.unit_rep);
  EXPECT_EQ(*r.unit_rep, q);
  ASSERT_TRUE(r.residue_algebra);
  EXPECT_EQ(r.residue_algebra->to_string(), "(2, 3)");
  EXPECT_EQ(r.residue_algebra->base()->describe(), "F7");
  EXPECT_EQ(r.split_over_residue, std::optional<bool>(true));
  EXPECT_FALSE(r.split_over_completion);
}

TEST(Ramification, RamifiedAtFive) {
  auto q = alg(Field::rationals(), "5", "2");
  auto r = ramification(q, *Valuation::padic(5));
  EXPECT_EQ(r.status, RamificationStatus::Ramified);
  EXPECT_EQ(r.residue_class.as_residue(), 2);
  // Oracles: textbook Hilbert symbol and a primitive zero search mod 25.
  EXPECT_EQ(hilbert_symbol(5, 2, 5), -1);
  EXPECT_FALSE(norm_zero_mod(5, 2, 5, 2));
  EXPECT_TRUE(norm_zero_mod(5, 1, 5, 2));
}

TEST(Ramification, DivisionResidueOverFunctionField) {
  auto k = Field::function(Field::rationals(), "s");
  auto q = alg(k, "-1", "s");
  auto v = Valuation::gauss(Valuation::padic(3), k);
  auto r = ramification(q, *v);
  EXPECT_EQ(r.status, RamificationStatus::Unramified);
  EXPECT_EQ(*r.unit_rep, q);
  EXPECT_EQ(r.residue_algebra->to_string(), "(2, s)");
  EXPECT_EQ(r.residue_algebra->base()->describe(), "F3(s)");
  EXPECT_EQ(r.split_over_residue, std::optional<bool>(false));
  EXPECT_EQ(residue_quaternion(q, *v).to_string(), "(2, s)");
  // -1 is a square mod 5, so the same algebra has split residue there.
  auto r5 = ramification(q, *Valuation::gauss(Valuation::padic(5), k));
  EXPECT_EQ(r5.split_over_residue, std::optional<bool>(true));
}

TEST(Ramification, SquareTwistIsStripped) {
  auto q = alg(Field::rationals(), "18", "3");
  auto v = Valuation::padic(3);
  EXPECT_EQ(ramification(q, *v).status, RamificationStatus::Ramified);
  try {
    residue_quaternion(q, *v);
    FAIL();
  } catch (const MathError& e) {
    EXPECT_EQ(e.code(), Errc::RamifiedAlgebra);
  }
  auto q2 = alg(Field::rationals(), "18", "9/7");
  auto r = ramification(q2, *v);
  EXPECT_EQ(r.status, RamificationStatus::Unramified);
  EXPECT_EQ(r.unit_rep->to_string(), "(2, 1/7)");
  EXPECT_EQ(r.to_unit_rep->target(), *r.unit_rep);
}

TEST(Ramification, BothSlotsOdd) {
  // (3, 6) at 3: rewrite to (3, -18) -> (3, -2); -2 = 1 mod 3 is a square.
  auto q = alg(Field::rationals(), "3", "6");
  auto r = ramification(q, *Valuation::padic(3));
  EXPECT_EQ(r.status, RamificationStatus::Unramified);
  EXPECT_TRUE(r.split_over_completion);
  EXPECT_EQ(r.unit_rep->to_string(), "(1, 1)");
  EXPECT_FALSE(r.to_unit_rep.has_value());  // -2 is not a square in Q
  EXPECT_EQ(hilbert_symbol(3, 6, 3), 1);
}

TEST(Ramification, SplitWithGlobalIsomorphism) {
  auto q = alg(Field::rationals(), "3", "4");
  auto r = ramification(q, *Valuation::padic(3));
  ASSERT_TRUE(r.to_unit_rep);
  EXPECT_EQ(r.to_unit_rep->target().to_string(), "(1, 1)");
  auto inv = r.to_unit_rep->inverse();
  auto u = quat(q, 1, 2, -1, 3);
  EXPECT_EQ(inv.apply(r.to_unit_rep->apply(u)), u);
  EXPECT_EQ(r.to_unit_rep->apply(u).nrd(), u.nrd());
}

TEST(RamificationProperty, UnitRepresentationPreservesNormForm) {
  auto f = Field::rationals();
  for (long p : {3L, 5L, 7L}) {
    auto v = Valuation::padic(p);
    Sampler rng(80 + p, p);
    int with_iso = 0;
    for (int k = 0; k < 60; ++k) {
      auto d = rng.nonzero(f), t = rng.nonzero(f);
      QuaternionAlgebra q(f, d, t);
      auto r = ramification(q, *v);
      if (r.status != RamificationStatus::Unramified) continue;
      ASSERT_TRUE(v->is_unit(r.unit_rep->d()) && v->is_unit(r.unit_rep->t()));
      if (!r.to_unit_rep) continue;
      ++with_iso;
      EXPECT_EQ(witt_equal(norm_form(q), norm_form(*r.unit_rep)), Verdict::True) << q.to_string();
      auto u = random_quaternion(rng, q);
      EXPECT_EQ(r.to_unit_rep->apply(u).nrd(), u.nrd());
    }
    EXPECT_GT(with_iso, 10);
  }
}

TEST(RamificationProperty, TameResidueMatchesPfisterResidue) {
  auto f = Field::rationals();
  int ramified = 0, unramified = 0;
  for (long p : {3L, 5L, 7L, 13L}) {
    auto v = Valuation::padic(p);
    Sampler rng(90 + p, p);
    for (int k = 0; k < 50; ++k) {
      const long a = rng.integer(1, 9) * (rng.coin() ? -1 : 1) * (rng.coin() ? p : 1);
      const long b = rng.integer(1, 9) * (rng.coin() ? -1 : 1) * (rng.coin() ? p : 1);
      QuaternionAlgebra q(f, from_integer(f, a), from_integer(f, b));
      auto r = ramification(q, *v);
      QuadraticForm pfister(f, {-q.d(), -q.t(), q.d() * q.t()});
      const bool unram = r.status == RamificationStatus::Unramified;
      EXPECT_EQ(unram, is_unramified(pfister, *v) == Verdict::True) << q.to_string() << " at " << p;
      EXPECT_EQ(unram, hilbert_symbol(a, b, p) == 1) << q.to_string() << " at " << p;
      (unram ? unramified : ramified)++;
    }
  }
  EXPECT_GT(ramified, 20);
  EXPECT_GT(unramified, 20);
}

TEST(RamificationFault, DroppedUnitRepresentationKeepsTwist) {
  auto q = alg(Field::rationals(), "18", "9/7");
  faults::Scoped guard(faults::drop_unit_representation);
  auto r = ramification(q, *Valuation::padic(3));
  EXPECT_EQ(*r.unit_rep, q);
  EXPECT_FALSE(r.residue_algebra.has_value());
}

TEST(ResidueSplitness, FunctionFieldPlaces) {
  auto fs = Field::function(Field::finite(5), "s");
  // (2, s): residue 2 at s is a nonsquare mod 5.
  EXPECT_FALSE(residue_algebra_splits(alg(fs, "2", "s")));
  // (s, s + 1): residues 1 at s, -1 at s + 1 and -1 at infinity are squares mod 5.
  EXPECT_TRUE(residue_algebra_splits(alg(fs, "s", "s + 1")));
  // s^2 + 1 = (s - 2)(s + 2) mod 5 and 3 is a nonsquare there; s^2 + 2 is irreducible.
  EXPECT_FALSE(residue_algebra_splits(alg(fs, "s^2 + 1", "3")));
  EXPECT_TRUE(residue_algebra_splits(alg(fs, "s^2 + 2", "3")));
  EXPECT_TRUE(residue_algebra_splits(alg(fs, "1", "s")));
  // (s, s) ~ (s, -1), split since -1 is a square mod 5.
  EXPECT_TRUE(residue_algebra_splits(alg(fs, "s", "s")));
  auto f3 = Field::function(Field::finite(3), "s");
  EXPECT_FALSE(residue_algebra_splits(alg(f3, "s", "s")));
  // Residue 2 at an irreducible quadratic place lives in F_9, where it is a square.
  EXPECT_TRUE(residue_algebra_splits(alg(f3, "2", "s^2 + 1")));
  EXPECT_TRUE(residue_algebra_splits(alg(f3, "2", "s^2 + s + 2")));
  EXPECT_FALSE(residue_algebra_splits(alg(f3, "2", "s^3 + 2*s + 1")));
}
