#pragma once

// Exact arithmetic in a small tower of fields:
//
//   Q, F_p                      prime fields
//   F(v)                        rational functions in one variable over F
//   F(Q) = F(x)[y]/(d x^2 + t y^2 - 1)   function field of the conic of (d, t)
//
// Elements are immutable and always kept in canonical form, so equality is
// structural. Fields are described by shared immutable descriptors; two
// descriptors built separately compare equal when their structure agrees.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "morita/errors.hpp"

namespace morita {

enum class FieldKind { Rationals, FiniteField, FunctionField, Conic };

class Field;
class FieldElement;
class Polynomial;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {
struct Payload;
}

class FieldElement {
 public:
  FieldElement() = default;

  const FieldPtr& field() const noexcept { return field_; }
  bool valid() const noexcept { return static_cast<bool>(data_); }

  bool is_zero() const;
  bool is_one() const;

  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::int64_t exponent) const;
  FieldElement square() const { return *this * *this; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  /// Canonical text; parse_element(field(), to_string()) returns *this.
  std::string to_string() const;

  // Level-specific views. Each throws LevelMismatch on the wrong level.
  const mpq_class& as_rational() const;
  std::int64_t as_residue() const;
  const Polynomial& numerator() const;
  const Polynomial& denominator() const;
  /// A + B*y coordinates of a conic element, both in the field's K(x).
  const FieldElement& conic_a() const;
  const FieldElement& conic_b() const;

  // Internal representation; only meaningful inside the library.
  FieldElement(FieldPtr field, std::shared_ptr<const detail::Payload> data)
      : field_(std::move(field)), data_(std::move(data)) {}
  const detail::Payload& payload() const { return *data_; }

 private:
  FieldPtr field_;
  std::shared_ptr<const detail::Payload> data_;
};

/// Dense polynomial over a coefficient field, ascending degree, no trailing zeros.
class Polynomial {
 public:
  explicit Polynomial(FieldPtr coefficient_field);
  Polynomial(FieldPtr coefficient_field, std::vector<FieldElement> coefficients);

  static Polynomial constant(const FieldElement& c);
  static Polynomial monomial(const FieldElement& c, std::size_t degree);

  const FieldPtr& coefficient_field() const noexcept { return field_; }
  const std::vector<FieldElement>& coefficients() const noexcept { return c_; }

  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const;
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const FieldElement& leading() const;
  FieldElement coefficient(std::size_t k) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(const FieldElement& c) const;
  /// Quotient and remainder; throws DivisionByZero for a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial exact_quotient(const Polynomial& divisor) const;
  Polynomial monic() const;
  FieldElement evaluate(const FieldElement& at) const;

  /// Monic gcd (zero when both inputs are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);
  /// Square root of a monic polynomial, if it is a perfect square.
  std::optional<Polynomial> sqrt_monic() const;

  std::string to_string(std::string_view variable) const;

 private:
  void trim();

  FieldPtr field_;
  std::vector<FieldElement> c_;
};

class Field {
 public:
  static FieldPtr rationals();
  /// p must be an odd prime.
  static FieldPtr finite(std::int64_t p);
  static FieldPtr function(FieldPtr base, std::string variable);
  /// Function field of d x^2 + t y^2 = 1 over base; d, t nonzero in base.
  /// `xfield`, when given, must be base(x) and is reused as the K(x) level.
  static FieldPtr conic(FieldPtr base, FieldElement d, FieldElement t, FieldPtr xfield = nullptr);

  FieldKind kind() const noexcept { return kind_; }
  /// 0 for Q, p for every level built over F_p.
  std::int64_t characteristic() const noexcept { return characteristic_; }

  /// Coefficient field (function field) or K (conic).
  const FieldPtr& base() const noexcept { return base_; }
  const std::string& variable() const noexcept { return variable_; }

  // Conic levels only.
  const FieldPtr& rational_function_field() const;
  const FieldElement& conic_d() const;
  const FieldElement& conic_t() const;
  /// y^2 = (1 - d x^2)/t as an element of K(x).
  const FieldElement& y_squared() const;

  /// Prime field at the bottom of the tower.
  const Field& prime_field() const;
  bool has_symbol(std::string_view name) const;
  std::string describe() const;

 private:
  Field() = default;

  FieldKind kind_ = FieldKind::Rationals;
  std::int64_t characteristic_ = 0;
  FieldPtr base_;
  std::string variable_;
  FieldPtr xfield_;
  std::shared_ptr<const FieldElement> d_, t_, y_squared_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);
void require_same_field(const FieldPtr& a, const FieldPtr& b, std::string_view context);

FieldElement zero(const FieldPtr& field);
FieldElement one(const FieldPtr& field);
FieldElement from_integer(const FieldPtr& field, const mpz_class& n);
FieldElement from_integer(const FieldPtr& field, long n);
FieldElement from_rational(const FieldPtr& field, const mpq_class& q);
/// Generator named `name` at some level of the tower, embedded into `field`.
FieldElement symbol(const FieldPtr& field, std::string_view name);
/// Canonical image of an element of a lower level of the tower.
FieldElement embed(const FieldPtr& target, const FieldElement& e);

/// num/den in canonical form (gcd-reduced, monic denominator).
FieldElement make_rational_function(const FieldPtr& field, Polynomial num, Polynomial den);
FieldElement make_conic_element(const FieldPtr& field, FieldElement a, FieldElement b);

/// Integers, symbols, + - * / ^ and parentheses; throws ParseError.
FieldElement parse_element(const FieldPtr& field, std::string_view text);

/// Square root in the same field, when one exists.
std::optional<FieldElement> sqrt(const FieldElement& e);
inline bool is_square(const FieldElement& e) { return sqrt(e).has_value(); }

/// Norm to K(x) of a conic element: A^2 - B^2 y^2.
FieldElement conic_norm(const FieldElement& e);

/// Small elements of a field ordered by size, used for bounded searches.
/// `height` bounds integer numerators and denominators; `degree` bounds
/// polynomial degree at function-field levels.
std::vector<FieldElement> small_elements(const FieldPtr& field, int height, int degree);

}  // namespace morita
