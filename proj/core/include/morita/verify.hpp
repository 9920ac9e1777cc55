#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "morita/morita.hpp"

namespace morita {

enum class Outcome { Verified, Violated, Indeterminate, HypothesisFailed, Error };
std::string_view to_string(Outcome o) noexcept;

/// Which argument the check followed.
///   division-residue: K(Q_v) with a nonsplit residue conic, every entry must have value 0.
///   split-point:      Q splits over K; reduce at a point adapted to v.
///   conic:            residue conic splits but no adapted K-point was found.
enum class Branch { DivisionResidue, SplitPoint, Conic };
std::string_view to_string(Branch b) noexcept;

struct EntryReport {
  std::string a, b, c;
  std::string norm;
  std::int64_t min_value = 0;

  friend bool operator==(const EntryReport&, const EntryReport&) = default;
};

struct QuadEntryReport {
  std::string expr;
  std::int64_t value = 0;

  friend bool operator==(const QuadEntryReport&, const QuadEntryReport&) = default;
};

struct VerificationReport {
  std::uint64_t instance = 0;
  std::string algebra;
  std::string valuation;
  std::string form;
  std::string unit_presentation;
  std::string branch;
  std::vector<std::string> certified_diagonal;
  std::int64_t scaling = 0;
  std::optional<std::string> point;
  std::vector<EntryReport> entries;
  std::vector<QuadEntryReport> quad_entries;
  std::vector<std::string> second_residue;
  std::string verdict;
  std::vector<std::string> violations;
  Outcome outcome = Outcome::Error;
  std::string note;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

nlohmann::ordered_json to_json(const VerificationReport& r);
VerificationReport report_from_json(const nlohmann::ordered_json& j);

struct CheckOptions {
  SearchBudget budget;
  /// Known K-points of the conic of the input presentation.
  std::vector<ConicPoint> seeds;
  /// K-points tried before giving up on an adapted one.
  std::size_t max_points = 400;
};

/// Runs the good-reduction => unramified-reduct pipeline on h at v. Throws
/// HypothesisNotCertified when the certifier finds no certificate.
VerificationReport theorem_cool_check(const SkewHermitianForm& h, const ValuationPtr& v,
                                      const CheckOptions& options = {});

}  // namespace morita
