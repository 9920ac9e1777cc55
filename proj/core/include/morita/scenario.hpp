#pragma once
// JSON scenario files:
//
//   {
//     "field":      {"kind": "function", "base": {"kind": "rationals"}, "var": "s"},
//     "valuation":  {"kind": "gauss", "inner": {"kind": "padic", "p": 3}},
//     "quaternion": {"d": "-1", "t": "s"},
//     "form":       {"diag": [{"a": "1"}, {"b": "1"}]},
//     "generator":  {"n": 2, "coeff_min": -9, "coeff_max": 9},
//     "trials": 200, "seed": 42
//   }
//
// Field kinds: rationals, finite {p}, function {base, var}, conic {base, d, t}.
// Valuation kinds: padic {p}, gauss {inner}, conic_half_norm {inner, residue_conic}.
// Forms: {"diag": [{a, b, c}]} or {"gram": [[{w, a, b, c}]]}; missing coordinates are 0.
// Elements are strings in the element grammar, or integers.

#include <cstdint>
#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "morita/generate.hpp"
#include "morita/morita.hpp"

namespace morita {

struct Scenario {
  FieldPtr field;
  ValuationPtr valuation;
  std::optional<QuaternionAlgebra> algebra;
  std::optional<SkewHermitianForm> form;
  std::optional<ConicPoint> point;
  std::optional<QuadraticForm> entries;
  std::optional<QuadraticForm> other_entries;
  std::optional<GeneratorSpec> generator;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  SearchBudget budget;
};

/// Throws ParseError or InvalidDescriptor on malformed input.
FieldPtr parse_field(const nlohmann::json& j);
ValuationPtr parse_valuation(const nlohmann::json& j, const FieldPtr& domain);
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const RamificationReport& r);
nlohmann::ordered_json to_json(const GoodReductionCertificate& c);
nlohmann::ordered_json to_json(const QuadraticForm& q);
nlohmann::ordered_json to_json(const Quaternion& u);

}  // namespace morita
