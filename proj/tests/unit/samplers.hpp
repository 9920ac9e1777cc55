#pragma once

// Random elements for property tests. Coefficients are small integers with
// an occasional factor of the prime so that values are not all zero.

#include <cmath>
#include <random>

#include "morita/field.hpp"

namespace morita::testing {

class Sampler {
 public:
  Sampler(std::uint64_t seed, long prime) : rng_(seed), p_(prime) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Small integer times p^k, k mostly 0.
  mpq_class rational() {
    mpq_class q(integer(-9, 9), integer(1, 6));
    const long k = integer(-3, 3);
    if (k > 0) q *= mpq_class(static_cast<long>(std::pow(p_, k)));
    if (k < -1) q /= mpq_class(static_cast<long>(std::pow(p_, -k - 1)));
    q.canonicalize();
    return q;
  }

  FieldElement element(const FieldPtr& f, int degree = 2) {
    switch (f->kind()) {
      case FieldKind::Rationals:
        return from_rational(f, rational());
      case FieldKind::FiniteField:
        return from_integer(f, integer(0, f->characteristic() - 1));
      case FieldKind::FunctionField: {
        auto num = polynomial(f->base(), degree);
        auto den = polynomial(f->base(), integer(0, 1) ? 0 : degree);
        if (den.is_zero()) den = Polynomial::constant(one(f->base()));
        return make_rational_function(f, num, den);
      }
      case FieldKind::Conic: {
        const auto& xf = f->rational_function_field();
        return make_conic_element(f, element(xf, degree), coin() ? zero(xf) : element(xf, degree));
      }
    }
    return zero(f);
  }

  FieldElement nonzero(const FieldPtr& f, int degree = 2) {
    for (;;) {
      auto e = element(f, degree);
      if (!e.is_zero()) return e;
    }
  }

  Polynomial polynomial(const FieldPtr& coeffs, int degree) {
    std::vector<FieldElement> c;
    const int deg = static_cast<int>(integer(0, degree));
    for (int k = 0; k <= deg; ++k) c.push_back(coin() || k == deg ? element(coeffs, 1) : zero(coeffs));
    return Polynomial(coeffs, std::move(c));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  long p_;
};

}  // namespace morita::testing
