#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morita/field.hpp"
#include "morita/valuation.hpp"

namespace morita {

using Matrix = std::vector<std::vector<FieldElement>>;

/// Diagonal form <u_1, ..., u_m> with nonzero entries.
class QuadraticForm {
 public:
  explicit QuadraticForm(FieldPtr base, std::vector<FieldElement> entries = {});

  const FieldPtr& base() const noexcept { return base_; }
  const std::vector<FieldElement>& entries() const noexcept { return entries_; }
  std::size_t rank() const noexcept { return entries_.size(); }

  /// Product of the entries (1 for the empty form).
  FieldElement discriminant() const;
  QuadraticForm operator-() const;
  QuadraticForm scaled(const FieldElement& lambda) const;
  /// Orthogonal sum.
  friend QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b);
  friend bool operator==(const QuadraticForm& a, const QuadraticForm& b);

  std::string to_string() const;

 private:
  FieldPtr base_;
  std::vector<FieldElement> entries_;
};

struct Diagonalization {
  QuadraticForm form;
  /// Columns are the new basis: transpose(basis) * gram * basis = diag(form).
  Matrix basis;
};

/// Symmetric Gaussian elimination; throws Degenerate for singular input.
Diagonalization diagonalize(const FieldPtr& base, const Matrix& gram);

struct ResiduePair {
  QuadraticForm first;
  QuadraticForm second;
};

/// First and second residue forms: each entry is moved into value 0 or 1 by
/// an even power of the uniformizer and reduced.
ResiduePair residue_forms(const QuadraticForm& q, const Valuation& v);

enum class Verdict { True, False, Indeterminate };
std::string_view to_string(Verdict v) noexcept;

/// Bounds for isotropic-vector searches outside finite fields.
struct SearchBudget {
  int height = 3;       // numerators/denominators of rational coordinates
  int poly_degree = 2;  // degree of polynomial coordinates over function fields
  std::int64_t max_vectors = 200000;
};

/// Is q hyperbolic? Exact over finite fields; a bounded semi-decision elsewhere.
Verdict witt_trivial(const QuadraticForm& q, const SearchBudget& budget = {});
/// witt_trivial(a + (-b)).
Verdict witt_equal(const QuadraticForm& a, const QuadraticForm& b, const SearchBudget& budget = {});
/// Second residue form is Witt-trivial.
Verdict is_unramified(const QuadraticForm& q, const Valuation& v, const SearchBudget& budget = {});

/// a/b is a nonzero square.
bool same_square_class(const FieldElement& a, const FieldElement& b);

// Small dense-matrix helpers shared by the other modules.
Matrix identity_matrix(const FieldPtr& f, std::size_t n);
Matrix transpose(const Matrix& m);
Matrix multiply(const Matrix& a, const Matrix& b);
FieldElement determinant(const FieldPtr& f, Matrix m);
/// Throws Degenerate for a singular matrix.
Matrix inverse(const FieldPtr& f, Matrix m);

}  // namespace morita
