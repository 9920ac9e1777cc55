#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morita/quaternion.hpp"

namespace morita {

using QuaternionMatrix = std::vector<std::vector<Quaternion>>;

/// h(x, y) = sum conj(x_k) gram[k][l] y_l, with conj(gram)^T = -gram.
class SkewHermitianForm {
 public:
  /// Throws DimensionMismatch, InvalidDescriptor (not skew-hermitian) or Degenerate.
  SkewHermitianForm(QuaternionAlgebra algebra, QuaternionMatrix gram);
  static SkewHermitianForm diagonal(const QuaternionAlgebra& algebra, const std::vector<Quaternion>& entries);

  const QuaternionAlgebra& algebra() const noexcept { return algebra_; }
  const QuaternionMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.size(); }
  bool is_diagonal() const;
  /// Diagonal of the Gram matrix.
  std::vector<Quaternion> diagonal_entries() const;

  friend bool operator==(const SkewHermitianForm& a, const SkewHermitianForm& b);
  std::string to_string() const;

 private:
  QuaternionAlgebra algebra_;
  QuaternionMatrix gram_;
};

Quaternion evaluate(const SkewHermitianForm& h, const std::vector<Quaternion>& x, const std::vector<Quaternion>& y);

/// conj(P)^T * G * P.
QuaternionMatrix congruence(const QuaternionMatrix& p, const QuaternionMatrix& g);
QuaternionMatrix identity_matrix(const QuaternionAlgebra& q, std::size_t n);

struct HermitianDiagonalization {
  std::vector<Quaternion> diagonal;
  /// Columns are the new basis: congruence(basis, gram) = diag(diagonal).
  QuaternionMatrix basis;
};

HermitianDiagonalization diagonalize_h(const SkewHermitianForm& h);

/// Entrywise lambda * h for central nonzero lambda; throws ZeroScalar.
SkewHermitianForm scale(const FieldElement& lambda, const SkewHermitianForm& h);

enum class CertificateVerdict { Certified, NoCertificate };
std::string_view to_string(CertificateVerdict v) noexcept;

struct GoodReductionCertificate {
  CertificateVerdict verdict = CertificateVerdict::NoCertificate;
  /// pi^scaling times the diagonal of h; each entry has extval 0.
  std::optional<std::vector<Quaternion>> diagonal;
  std::optional<std::int64_t> scaling;
  /// extval of the unscaled diagonal.
  std::vector<HalfInteger> values;
  /// Why no certificate was produced. Never a claim of bad reduction.
  std::string note;
};

/// Sound, incomplete: a unit diagonal after a central pi-power twist whose
/// entries are integral in a unit presentation of the algebra. Throws
/// RamifiedAlgebra when the algebra ramifies at v.
GoodReductionCertificate good_reduction_certificate(const SkewHermitianForm& h, const Valuation& v);

}  // namespace morita
