#include "morita/errors.hpp"

namespace morita {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::RamifiedParameters: return "RamifiedParameters";
    case Errc::NonIntegralValue: return "NonIntegralValue";
    case Errc::Degenerate: return "Degenerate";
    case Errc::ZeroEntry: return "ZeroEntry";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::ZeroScalar: return "ZeroScalar";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EvenResidueChar: return "EvenResidueChar";
    case Errc::RamifiedAlgebra: return "RamifiedAlgebra";
    case Errc::NotOnConic: return "NotOnConic";
    case Errc::DegenerateSpecialization: return "DegenerateSpecialization";
    case Errc::HypothesisNotCertified: return "HypothesisNotCertified";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidDescriptor: return "InvalidDescriptor";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

MathError::MathError(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void raise(Errc code, const std::string& message) { throw MathError(code, message); }

}  // namespace morita
