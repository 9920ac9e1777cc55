#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace morita {

enum class Errc {
  LevelMismatch,
  DivisionByZero,
  NegativeValue,
  RamifiedParameters,
  NonIntegralValue,
  Degenerate,
  ZeroEntry,
  ZeroElement,
  ZeroScalar,
  AlgebraMismatch,
  DimensionMismatch,
  EvenResidueChar,
  RamifiedAlgebra,
  NotOnConic,
  DegenerateSpecialization,
  HypothesisNotCertified,
  ParseError,
  InvalidDescriptor,
  Unsupported,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class MathError : public std::runtime_error {
 public:
  MathError(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& message);

}  // namespace morita
