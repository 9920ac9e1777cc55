#include "morita/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace morita {

VerificationReport run_instance(const BatchConfig& config, std::uint64_t index) {
  VerificationReport r;
  try {
    const auto inst = generate_instance(config.algebra, config.valuation, config.generator, config.seed, index);
    r.algebra = inst.form.algebra().to_string();
    r.form = inst.form.to_string();
    r.valuation = config.valuation->describe();
    auto options = config.check;
    options.seeds.insert(options.seeds.end(), inst.seeds.begin(), inst.seeds.end());
    try {
      r = theorem_cool_check(inst.form, config.valuation, options);
    } catch (const MathError& e) {
      r.outcome = e.code() == Errc::HypothesisNotCertified ? Outcome::HypothesisFailed : Outcome::Error;
      r.note = e.what();
    }
  } catch (const MathError& e) {
    r.outcome = Outcome::Error;
    r.note = e.what();
  }
  r.instance = index;
  return r;
}

RunReport run_verification(const BatchConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.seed = config.seed;
  report.trials = config.trials;
  report.instances.resize(config.trials);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < config.trials;) report.instances[k] = run_instance(config, k);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(config.trials)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& r : report.instances) {
    switch (r.outcome) {
      case Outcome::Verified:
        ++report.counts.verified;
        break;
      case Outcome::Violated:
        ++report.counts.violated;
        break;
      case Outcome::Indeterminate:
        ++report.counts.indeterminate;
        break;
      case Outcome::HypothesisFailed:
        ++report.counts.hypothesis_failed;
        break;
      case Outcome::Error:
        ++report.counts.error;
        break;
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int exit_code(const RunReport& report) {
  const auto& c = report.counts;
  if (c.violated + c.hypothesis_failed + c.error > 0) return 1;
  if (c.indeterminate > 0) return 3;
  return 0;
}

nlohmann::ordered_json to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["counts"] = {{"verified", report.counts.verified},
                 {"violated", report.counts.violated},
                 {"hypothesis_failed", report.counts.hypothesis_failed},
                 {"indeterminate", report.counts.indeterminate},
                 {"error", report.counts.error}};
  auto& arr = j["instances"] = nlohmann::ordered_json::array();
  for (const auto& r : report.instances) arr.push_back(to_json(r));
  return j;
}

}  // namespace morita
