// morita: command-line front end.
//
// Exit codes: 0 ok, 1 a property was violated, 2 input error, 3 indeterminate.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "morita/batch.hpp"
#include "morita/faults.hpp"
#include "morita/scenario.hpp"

using namespace morita;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kViolated = 1;
constexpr int kInputError = 2;
constexpr int kIndeterminate = 3;

struct Options {
  std::string scenario;
  bool json = false;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  unsigned jobs = 1;
  std::string fault;
};

template <class T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) raise(Errc::InvalidDescriptor, std::string("scenario needs '") + what + "'");
  return *v;
}

const ValuationPtr& need_valuation(const Scenario& s) {
  if (!s.valuation) raise(Errc::InvalidDescriptor, "scenario needs 'valuation'");
  return s.valuation;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string join_values(const std::vector<HalfInteger>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) out += (k ? ", " : "") + values[k].to_string();
  return out;
}

int cmd_residue(const Scenario& s, const Options& o) {
  const auto& q = need(s.algebra, "quaternion");
  const auto r = ramification(q, *need_valuation(s));
  if (o.json) {
    emit(to_json(r));
    return kOk;
  }
  const auto& rf = r.residue_class.field();
  if (r.status == RamificationStatus::Ramified) {
    const auto where = rf->kind() == FieldKind::FiniteField ? "mod " + std::to_string(rf->characteristic())
                                                             : "in " + rf->describe();
    std::cout << "Ramified; residue class " << r.residue_class.to_string() << " (nonsquare " << where << ")\n";
    return kOk;
  }
  std::cout << "Unramified";
  if (r.residue_algebra)
    std::cout << "; residue " << r.residue_algebra->to_string() << " over " << r.residue_algebra->base()->describe();
  if (r.split_over_completion) std::cout << "; split over the completion";
  if (r.split_over_residue) std::cout << "; residue algebra " << (*r.split_over_residue ? "split" : "nonsplit");
  if (r.unit_rep && !(*r.unit_rep == q)) std::cout << "; unit presentation " << r.unit_rep->to_string();
  std::cout << "\n";
  return kOk;
}

int cmd_certify(const Scenario& s, const Options& o) {
  const auto& h = need(s.form, "form");
  const auto c = good_reduction_certificate(h, *need_valuation(s));
  if (o.json) {
    emit(to_json(c));
    return kOk;
  }
  if (c.verdict == CertificateVerdict::Certified) {
    std::cout << "Certified; scaling exponent " << *c.scaling << "; diagonal "
              << SkewHermitianForm::diagonal(h.algebra(), *c.diagonal).to_string() << "; values "
              << join_values(c.values) << "\n";
  } else {
    std::cout << "NoCertificate; values " << join_values(c.values) << "; " << c.note << "\n";
  }
  return kOk;
}

int cmd_reduce(const Scenario& s, const Options& o) {
  auto h = need(s.form, "form");
  if (!h.is_diagonal()) h = SkewHermitianForm::diagonal(h.algebra(), diagonalize_h(h).diagonal);
  const auto r = morita_reduce(h);
  if (o.json) {
    emit({{"field", r.quad.base()->describe()}, {"source", h.to_string()}, {"reduct", to_json(r.quad)}});
    return kOk;
  }
  std::cout << r.quad.to_string() << "\n";
  return kOk;
}

int cmd_split_reduce(const Scenario& s, const Options& o) {
  const auto& h = need(s.form, "form");
  ConicPoint point;
  if (s.point) {
    point = *s.point;
  } else {
    const auto found = conic_points(h.algebra(), s.budget, 1);
    if (found.empty()) {
      std::cerr << "no point on the conic within the search budget\n";
      return kIndeterminate;
    }
    point = found.front();
  }
  const auto q = split_reduce_at_point(h, point);
  const auto where = "(" + point.x.to_string() + ", " + point.y.to_string() + ")";
  if (o.json) {
    emit({{"point", where}, {"reduct", to_json(q)}});
    return kOk;
  }
  std::cout << "at " << where << ": " << q.to_string() << "\n";
  return kOk;
}

int cmd_residue_forms(const Scenario& s, const Options& o) {
  const auto r = residue_forms(need(s.entries, "entries"), *need_valuation(s));
  if (o.json) {
    emit({{"first", to_json(r.first)}, {"second", to_json(r.second)}});
    return kOk;
  }
  std::cout << "first:  " << r.first.to_string() << "\nsecond: " << r.second.to_string() << "\n";
  return kOk;
}

int cmd_witt_equal(const Scenario& s, const Options& o) {
  const auto v = witt_equal(need(s.entries, "entries"), need(s.other_entries, "other_entries"), s.budget);
  if (o.json)
    emit({{"witt_equal", to_string(v)}});
  else
    std::cout << to_string(v) << "\n";
  return v == Verdict::Indeterminate ? kIndeterminate : kOk;
}

int single_outcome_code(Outcome outcome) {
  switch (outcome) {
    case Outcome::Verified:
      return kOk;
    case Outcome::Indeterminate:
      return kIndeterminate;
    default:
      return kViolated;
  }
}

int cmd_verify_theorem(const Scenario& s, const Options& o) {
  const auto& v = need_valuation(s);
  CheckOptions check;
  check.budget = s.budget;

  if (!s.generator) {
    // One form from the scenario.
    const auto& h = need(s.form, "form or generator");
    VerificationReport r;
    try {
      r = theorem_cool_check(h, v, check);
    } catch (const MathError& e) {
      if (e.code() != Errc::HypothesisNotCertified) throw;
      r.outcome = Outcome::HypothesisFailed;
      r.algebra = h.algebra().to_string();
      r.valuation = v->describe();
      r.form = h.to_string();
      r.note = e.what();
    }
    if (o.json) {
      emit(to_json(r));
    } else {
      std::cout << to_string(r.outcome);
      if (!r.note.empty()) std::cout << ": " << r.note;
      std::cout << "\n";
      if (r.outcome != Outcome::Verified) std::cout << to_json(r).dump(2) << "\n";
    }
    return single_outcome_code(r.outcome);
  }

  BatchConfig config;
  config.algebra = s.algebra;
  config.valuation = v;
  config.generator = *s.generator;
  config.trials = o.trials ? *o.trials : s.trials.value_or(100);
  config.seed = o.seed ? *o.seed : s.seed.value_or(0);
  config.jobs = o.jobs;
  config.check = check;
  if (config.generator.algebra == AlgebraMode::Fixed && !config.algebra)
    raise(Errc::InvalidDescriptor, "a fixed-algebra generator needs 'quaternion'");

  const auto report = run_verification(config);
  if (o.json) {
    emit(to_json(report));
    return exit_code(report);
  }
  const auto& c = report.counts;
  std::cout << c.verified << "/" << report.trials << " verified";
  if (c.violated) std::cout << ", " << c.violated << " violated";
  if (c.hypothesis_failed) std::cout << ", " << c.hypothesis_failed << " hypothesis failed";
  if (c.indeterminate) std::cout << ", " << c.indeterminate << " indeterminate";
  if (c.error) std::cout << ", " << c.error << " errors";
  std::cout << " (seed " << report.seed << ", " << report.wall_seconds << " s)\n";
  for (const auto& r : report.instances) {
    if (r.outcome == Outcome::Verified) continue;
    std::cout << "first failing instance:\n" << to_json(r).dump(2) << "\n";
    break;
  }
  return exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternion skew-hermitian forms, Morita reduction and good-reduction checks"};
  app.require_subcommand(1);

  Options o;
  const std::map<std::string, std::atomic<bool>*> hooks{
      {"negate-fast-path", &faults::negate_fast_path},
      {"drop-unit-representation", &faults::drop_unit_representation},
      {"skip-even-scaling", &faults::skip_even_scaling},
  };

  using Handler = int (*)(const Scenario&, const Options&);
  const std::vector<std::tuple<const char*, const char*, Handler>> commands{
      {"residue", "Ramification of the quaternion algebra at the valuation", cmd_residue},
      {"certify", "Good-reduction certificate for a skew-hermitian form", cmd_certify},
      {"reduce", "Morita reduct over the conic function field", cmd_reduce},
      {"split-reduce", "Morita reduct at a point of the conic", cmd_split_reduce},
      {"residue-forms", "First and second residue forms of a diagonal quadratic form", cmd_residue_forms},
      {"witt-equal", "Witt equivalence of two diagonal quadratic forms", cmd_witt_equal},
      {"verify-theorem", "Check that good reduction gives an unramified Morita reduct", cmd_verify_theorem},
  };

  std::map<CLI::App*, Handler> handlers;
  for (const auto& [name, help, handler] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", o.scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--json", o.json, "Machine-readable output");
    sub->add_option("--budget", o.budget, "Cap on vectors tried by bounded searches")->check(CLI::PositiveNumber);
    if (std::string(name) == "verify-theorem") {
      sub->add_option("--trials", o.trials, "Number of generated instances")->check(CLI::PositiveNumber);
      sub->add_option("--seed", o.seed, "Generator seed");
      sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
      sub->add_option("--fault", o.fault)->group("")->check(CLI::IsMember({
          "negate-fast-path", "drop-unit-representation", "skip-even-scaling"}));
    }
    handlers[sub] = handler;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    auto scenario = load_scenario(o.scenario);
    if (o.budget) scenario.budget.max_vectors = *o.budget;
    if (!o.fault.empty()) hooks.at(o.fault)->store(true);
    for (auto* sub : app.get_subcommands()) return handlers.at(sub)(scenario, o);
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
