#pragma once

#include <optional>
#include <vector>

#include "morita/quadratic_form.hpp"
#include "morita/skew_hermitian.hpp"

namespace morita {

/// K(Q): function field of d x^2 + t y^2 = 1 over the base of Q.
FieldPtr conic_field(const QuaternionAlgebra& q);

/// Matrix images of i, j, ij in M_2(K(Q)).
struct SplittingMatrices {
  FieldPtr field;
  Matrix i, j, ij;

  /// Image of w + a i + b j + c ij.
  Matrix image(const Quaternion& u) const;
};

/// i -> [[dx, -y], [-dty, -dx]], j -> [[ty, x], [dtx, -ty]], ij -> [[0, 1], [-dt, 0]].
SplittingMatrices splitting_matrices(const QuaternionAlgebra& q);

struct MoritaReduct {
  SkewHermitianForm source;
  QuadraticForm quad;
};

/// a y - b x - c for the pure quaternion a i + b j + c ij, at a point of the conic.
FieldElement linear_entry(const Quaternion& delta, const FieldElement& x, const FieldElement& y);

/// <e_l, -e_l N_l> with e_l = a_l y - b_l x - c_l and N_l = Nrd(delta_l).
/// Requires a diagonal form with pure entries.
MoritaReduct morita_reduce(const SkewHermitianForm& h);

/// Symmetric Gram matrix built from the blocks [[0, 1], [-1, 0]] * image(h_kl),
/// diagonalized over K(Q).
MoritaReduct morita_reduce_general(const SkewHermitianForm& h);
Matrix morita_gram(const SkewHermitianForm& h);

struct ConicPoint {
  FieldElement x, y;
};

/// morita_reduce specialized at a K-point: throws NotOnConic or
/// DegenerateSpecialization.
QuadraticForm split_reduce_at_point(const SkewHermitianForm& h, const ConicPoint& point);

/// Up to `limit` distinct K-points of d x^2 + t y^2 = 1: small x-coordinates
/// from the search pool, then lines through every point found, seeds first.
std::vector<ConicPoint> conic_points(const QuaternionAlgebra& q, const SearchBudget& budget, std::size_t limit,
                                     const std::vector<ConicPoint>& seeds = {});

struct ExtendedValuation {
  ValuationPtr valuation;
  /// Conic parameters (d_v, t_v) used for K(Q_v).
  QuaternionAlgebra unit_rep;
  std::optional<AlgebraIsomorphism> to_unit_rep;
};

/// Half-norm valuation on K(Q_v) over the Gauss extension of v to K(x);
/// throws RamifiedAlgebra.
ExtendedValuation extend_valuation(const ValuationPtr& v, const QuaternionAlgebra& q);

}  // namespace morita
