#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "morita/morita.hpp"

namespace morita {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// mt19937_64 seeded from (seed, stream) through splitmix64. Draws use
/// rejection sampling so streams agree across standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }

 private:
  std::mt19937_64 engine_;
};

enum class AlgebraMode {
  /// The scenario's algebra for every instance.
  Fixed,
  /// A fresh (d, t) over Q with unit slots and a known rational point.
  RandomSplit,
};

struct GeneratorSpec {
  std::size_t n = 2;
  /// When larger than n, the rank is drawn uniformly from [n, n_max].
  std::size_t n_max = 0;
  std::int64_t coeff_min = -9;
  std::int64_t coeff_max = 9;
  /// Central twist pi^k with |k| <= twist.
  std::int64_t twist = 0;
  /// Presentation (d pi^2a, t pi^2b) with 0 <= a, b <= presentation.
  std::int64_t presentation = 0;
  AlgebraMode algebra = AlgebraMode::Fixed;
};

struct Instance {
  SkewHermitianForm form;
  std::vector<ConicPoint> seeds;
};

/// Diagonal form whose entries, in a unit presentation, are pure quaternions
/// with integer coefficients in [coeff_min, coeff_max], at least one a
/// v-unit, and unit reduced norm: certified by construction. `fixed` is
/// required for AlgebraMode::Fixed and must be unramified at v.
Instance generate_instance(const std::optional<QuaternionAlgebra>& fixed, const ValuationPtr& v,
                           const GeneratorSpec& spec, std::uint64_t seed, std::uint64_t index);

}  // namespace morita
