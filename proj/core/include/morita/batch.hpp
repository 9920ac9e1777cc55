#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "morita/generate.hpp"
#include "morita/verify.hpp"

namespace morita {

struct BatchConfig {
  std::optional<QuaternionAlgebra> algebra;
  ValuationPtr valuation;
  GeneratorSpec generator;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  CheckOptions check;
};

struct RunCounts {
  std::size_t verified = 0;
  std::size_t violated = 0;
  std::size_t hypothesis_failed = 0;
  std::size_t indeterminate = 0;
  std::size_t error = 0;

  std::size_t total() const { return verified + violated + hypothesis_failed + indeterminate + error; }
};

struct RunReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  RunCounts counts;
  /// Ordered by instance index regardless of the worker count.
  std::vector<VerificationReport> instances;
  /// Not serialized, so reports stay byte-identical across runs.
  double wall_seconds = 0.0;
};

/// Generates and checks one instance; failures become Error or
/// HypothesisFailed reports rather than exceptions.
VerificationReport run_instance(const BatchConfig& config, std::uint64_t index);

RunReport run_verification(const BatchConfig& config);

/// 0 when every instance verified, 3 when the only failures are
/// indeterminate verdicts, 1 otherwise.
int exit_code(const RunReport& report);

nlohmann::ordered_json to_json(const RunReport& report);

}  // namespace morita
