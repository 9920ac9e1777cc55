#pragma once

#include <array>
#include <optional>
#include <string>

#include "morita/field.hpp"
#include "morita/quadratic_form.hpp"
#include "morita/valuation.hpp"

namespace morita {

/// The symbol algebra (d, t): basis 1, i, j, ij with i^2 = d, j^2 = t, ij = -ji.
class QuaternionAlgebra {
 public:
  QuaternionAlgebra(FieldPtr base, FieldElement d, FieldElement t);

  const FieldPtr& base() const noexcept { return base_; }
  const FieldElement& d() const noexcept { return d_; }
  const FieldElement& t() const noexcept { return t_; }

  friend bool operator==(const QuaternionAlgebra& a, const QuaternionAlgebra& b);
  std::string to_string() const;

 private:
  FieldPtr base_;
  FieldElement d_, t_;
};

/// w + a i + b j + c ij.
class Quaternion {
 public:
  Quaternion(QuaternionAlgebra algebra, FieldElement w, FieldElement a, FieldElement b, FieldElement c);

  static Quaternion scalar(const QuaternionAlgebra& q, const FieldElement& w);
  static Quaternion pure(const QuaternionAlgebra& q, const FieldElement& a, const FieldElement& b,
                         const FieldElement& c);
  static Quaternion zero(const QuaternionAlgebra& q);
  static Quaternion i(const QuaternionAlgebra& q);
  static Quaternion j(const QuaternionAlgebra& q);
  static Quaternion ij(const QuaternionAlgebra& q);

  const QuaternionAlgebra& algebra() const noexcept { return algebra_; }
  const FieldElement& w() const noexcept { return c_[0]; }
  const FieldElement& a() const noexcept { return c_[1]; }
  const FieldElement& b() const noexcept { return c_[2]; }
  const FieldElement& c() const noexcept { return c_[3]; }
  const std::array<FieldElement, 4>& coords() const noexcept { return c_; }

  bool is_zero() const;
  bool is_pure() const { return c_[0].is_zero(); }

  Quaternion conj() const;
  FieldElement nrd() const;
  Quaternion scaled(const FieldElement& lambda) const;
  Quaternion operator-() const;
  Quaternion inverse() const;

  friend Quaternion operator+(const Quaternion& x, const Quaternion& y);
  friend Quaternion operator-(const Quaternion& x, const Quaternion& y);
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y);
  friend bool operator==(const Quaternion& x, const Quaternion& y);

  std::string to_string() const;

 private:
  QuaternionAlgebra algebra_;
  std::array<FieldElement, 4> c_;
};

/// (1/2) v(Nrd u); throws ZeroElement for u = 0.
HalfInteger extval(const Quaternion& u, const Valuation& v);

/// K-algebra isomorphism source -> target fixed by the images of i and j.
class AlgebraIsomorphism {
 public:
  AlgebraIsomorphism(QuaternionAlgebra source, Quaternion image_i, Quaternion image_j);
  static AlgebraIsomorphism identity(const QuaternionAlgebra& q);

  const QuaternionAlgebra& source() const noexcept { return source_; }
  const QuaternionAlgebra& target() const noexcept { return image_i_.algebra(); }
  const Quaternion& image_i() const noexcept { return image_i_; }
  const Quaternion& image_j() const noexcept { return image_j_; }

  Quaternion apply(const Quaternion& u) const;
  /// (next o this): source -> next.target().
  AlgebraIsomorphism then(const AlgebraIsomorphism& next) const;
  AlgebraIsomorphism inverse() const;

 private:
  QuaternionAlgebra source_;
  Quaternion image_i_, image_j_;
};

enum class RamificationStatus { Unramified, Ramified };
std::string_view to_string(RamificationStatus s) noexcept;

struct RamificationReport {
  RamificationStatus status = RamificationStatus::Ramified;
  /// Tame residue (-1)^(v(d)v(t)) d^v(t) t^-v(d) in the residue field; over a
  /// finite field it is replaced by 1 or the least nonsquare.
  FieldElement residue_class;
  /// Unit presentation (d_v, t_v), when unramified.
  std::optional<QuaternionAlgebra> unit_rep;
  /// Isomorphism over K onto unit_rep, when one exists. The split case can
  /// need the completion, in which case this is empty.
  std::optional<AlgebraIsomorphism> to_unit_rep;
  /// Exactly one slot had odd value: split over the completion.
  bool split_over_completion = false;
  std::optional<QuaternionAlgebra> residue_algebra;
  std::optional<bool> split_over_residue;
};

RamificationReport ramification(const QuaternionAlgebra& q, const Valuation& v);
/// (residue(d_v), residue(t_v)); throws RamifiedAlgebra.
QuaternionAlgebra residue_quaternion(const QuaternionAlgebra& q, const Valuation& v);

/// Splitness of (d, t) over F_p or F_p(s).
bool residue_algebra_splits(const QuaternionAlgebra& q);

/// Reduced-norm form <1, -d, -t, dt>.
QuadraticForm norm_form(const QuaternionAlgebra& q);

/// 4x4 matrix of left multiplication by u in the basis 1, i, j, ij.
Matrix left_regular(const Quaternion& u);

}  // namespace morita
