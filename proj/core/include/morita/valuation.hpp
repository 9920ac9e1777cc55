#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>

#include "morita/field.hpp"

namespace morita {

/// v(0); every finite value is far from it.
inline constexpr std::int64_t kInfiniteValue = std::numeric_limits<std::int64_t>::max();

/// Exact element of (1/2)Z, stored doubled.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_doubled(std::int64_t twice) { return HalfInteger(twice); }
  static constexpr HalfInteger from_integer(std::int64_t n) { return HalfInteger(2 * n); }

  constexpr std::int64_t doubled() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Requires is_integer().
  constexpr std::int64_t integer() const { return twice_ / 2; }

  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ + b.twice_); }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return HalfInteger(a.twice_ - b.twice_); }
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

  std::string to_string() const;

 private:
  explicit constexpr HalfInteger(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

enum class ValuationKind { PAdic, Gauss, ConicHalfNorm };

/// Whether d x^2 + t y^2 = 1 has a point over the residue field of K.
enum class ResidueConic { Unknown, Split, Nonsplit };

class Valuation;
using ValuationPtr = std::shared_ptr<const Valuation>;

/// Normalized discrete valuation on one level of the tower.
class Valuation {
 public:
  /// p-adic valuation on Q; p an odd prime.
  static ValuationPtr padic(std::int64_t p);
  /// Gauss extension of `inner` to inner.domain()(var).
  static ValuationPtr gauss(ValuationPtr inner, FieldPtr function_field);
  /// Half-norm valuation on the conic field over gauss.domain() = K(x).
  /// The conic parameters must be units for the valuation on K.
  static ValuationPtr conic_half_norm(ValuationPtr gauss, FieldPtr conic,
                                      ResidueConic residue_conic = ResidueConic::Unknown);

  ValuationKind kind() const noexcept { return kind_; }
  const FieldPtr& domain() const noexcept { return domain_; }
  const FieldPtr& residue_field() const noexcept { return residue_field_; }
  const FieldElement& uniformizer() const noexcept { return uniformizer_; }
  /// Gauss: valuation on the coefficient field. Conic: the Gauss valuation on K(x).
  const ValuationPtr& inner() const noexcept { return inner_; }
  std::int64_t prime() const noexcept { return prime_; }
  ResidueConic residue_conic() const noexcept { return residue_conic_; }

  /// kInfiniteValue for zero.
  std::int64_t value(const FieldElement& e) const;
  /// Conic level: (1/2) v'(A^2 - B^2 y^2), bypassing the fast path.
  std::int64_t value_via_norm(const FieldElement& e) const;
  /// Reduction into residue_field(); throws NegativeValue when v(e) < 0.
  FieldElement residue(const FieldElement& e) const;

  bool is_unit(const FieldElement& e) const { return !e.is_zero() && value(e) == 0; }

  std::string describe() const;

 private:
  Valuation() = default;

  ValuationKind kind_ = ValuationKind::PAdic;
  std::int64_t prime_ = 0;
  FieldPtr domain_;
  FieldPtr residue_field_;
  FieldElement uniformizer_;
  ValuationPtr inner_;
  ResidueConic residue_conic_ = ResidueConic::Unknown;
};

}  // namespace morita
