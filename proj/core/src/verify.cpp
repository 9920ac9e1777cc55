#include "morita/verify.hpp"

#include <algorithm>

namespace morita {

std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Verified:
      return "verified";
    case Outcome::Violated:
      return "violated";
    case Outcome::Indeterminate:
      return "indeterminate";
    case Outcome::HypothesisFailed:
      return "hypothesis_failed";
    case Outcome::Error:
      return "error";
  }
  return "?";
}

std::string_view to_string(Branch b) noexcept {
  switch (b) {
    case Branch::DivisionResidue:
      return "division-residue";
    case Branch::SplitPoint:
      return "split-point";
    case Branch::Conic:
      return "conic";
  }
  return "?";
}

namespace {

Outcome outcome_from_string(const std::string& s) {
  for (auto o : {Outcome::Verified, Outcome::Violated, Outcome::Indeterminate, Outcome::HypothesisFailed, Outcome::Error})
    if (to_string(o) == s) return o;
  raise(Errc::ParseError, "unknown outcome '" + s + "'");
}

std::int64_t min_coefficient_value(const Quaternion& u, const Valuation& v) {
  std::int64_t m = kInfiniteValue;
  for (const auto& c : u.coords())
    if (!c.is_zero()) m = std::min(m, v.value(c));
  return m;
}

// Points of the input conic carried to the unit presentation, when the
// isomorphism only rescales i and j.
std::vector<ConicPoint> carry_points(const std::vector<ConicPoint>& seeds, const AlgebraIsomorphism& iso) {
  const auto& ii = iso.image_i();
  const auto& jj = iso.image_j();
  const bool diagonal = ii.w().is_zero() && ii.b().is_zero() && ii.c().is_zero() && jj.w().is_zero() &&
                        jj.a().is_zero() && jj.c().is_zero();
  std::vector<ConicPoint> out;
  if (!diagonal) return out;
  const auto& f = iso.source().base();
  for (const auto& p : seeds) out.push_back({embed(f, p.x) * ii.a(), embed(f, p.y) * jj.b()});
  return out;
}

struct Reduced {
  QuadraticForm quad;
  ValuationPtr valuation;
};

}  // namespace

VerificationReport theorem_cool_check(const SkewHermitianForm& h, const ValuationPtr& v, const CheckOptions& options) {
  const auto& q = h.algebra();
  VerificationReport r;
  r.algebra = q.to_string();
  r.valuation = v->describe();
  r.form = h.to_string();

  const auto cert = good_reduction_certificate(h, *v);
  if (cert.verdict != CertificateVerdict::Certified)
    raise(Errc::HypothesisNotCertified, h.to_string() + ": " + cert.note);
  r.scaling = *cert.scaling;
  for (const auto& d : *cert.diagonal) r.certified_diagonal.push_back(d.to_string());

  const auto ram = ramification(q, *v);
  const auto& rep = *ram.unit_rep;
  const auto& iso = *ram.to_unit_rep;
  r.unit_presentation = rep.to_string();
  auto violate = [&](std::string what) { r.violations.push_back(std::move(what)); };

  std::vector<Quaternion> unit_diag, original_diag;
  const auto original = h.is_diagonal() ? h.diagonal_entries() : diagonalize_h(h).diagonal;
  for (std::size_t l = 0; l < original.size(); ++l) {
    unit_diag.push_back(iso.apply((*cert.diagonal)[l]));
    original_diag.push_back(iso.apply(original[l]));
  }
  for (const auto& u : unit_diag) {
    EntryReport e{u.a().to_string(), u.b().to_string(), u.c().to_string(), u.nrd().to_string(),
                  min_coefficient_value(u, *v)};
    if (!u.is_pure()) violate("unit diagonal entry " + u.to_string() + " is not pure");
    if (e.min_value != 0) violate("coefficients of " + u.to_string() + " have minimum value " +
                                  std::to_string(e.min_value) + ", expected 0");
    r.entries.push_back(std::move(e));
  }
  const auto unit_h = SkewHermitianForm::diagonal(rep, unit_diag);
  const auto original_h = SkewHermitianForm::diagonal(rep, original_diag);

  // Pick the branch and build the reduct with its valuation.
  std::optional<Reduced> reduced, reduced_original;
  Branch branch = Branch::Conic;
  if (ram.split_over_residue == std::optional<bool>(true)) {
    auto seeds = carry_points(options.seeds, iso);
    const auto points = conic_points(rep, options.budget, options.max_points, seeds);
    std::optional<ConicPoint> even;
    for (const auto& p : points) {
      bool all_zero = true, all_even = true;
      for (const auto& d : unit_diag) {
        const auto e = linear_entry(d, p.x, p.y);
        const auto k = e.is_zero() ? kInfiniteValue : v->value(e);
        all_zero = all_zero && k == 0;
        all_even = all_even && k != kInfiniteValue && k % 2 == 0;
      }
      if (all_zero) {
        even = p;
        break;
      }
      if (all_even && !even) even = p;
    }
    if (even) {
      branch = Branch::SplitPoint;
      r.point = "(" + even->x.to_string() + ", " + even->y.to_string() + ")";
      reduced = Reduced{split_reduce_at_point(unit_h, *even), v};
      reduced_original = Reduced{split_reduce_at_point(original_h, *even), v};
    }
  } else if (ram.split_over_residue == std::optional<bool>(false)) {
    branch = Branch::DivisionResidue;
  }
  if (!reduced) {
    const auto ext = extend_valuation(v, q);
    reduced = Reduced{morita_reduce(unit_h).quad, ext.valuation};
    reduced_original = Reduced{morita_reduce(original_h).quad, ext.valuation};
    const auto& vt = *ext.valuation;
    const auto& f = vt.domain();
    if (vt.value(embed(f, v->uniformizer())) != 1) violate("extended valuation does not take the value 1 at pi");
    if (vt.value(symbol(f, "y")) != 0) violate("extended valuation does not vanish at y");
  }
  r.branch = std::string(to_string(branch));

  const auto& quad = reduced->quad;
  const auto& val = *reduced->valuation;
  for (const auto& e : quad.entries()) {
    r.quad_entries.push_back({e.to_string(), val.value(e)});
    if (branch == Branch::DivisionResidue && r.quad_entries.back().value != 0)
      violate("entry " + e.to_string() + " has value " + std::to_string(r.quad_entries.back().value) +
              " in the nonsplit residue configuration");
  }

  // The input form is pi^-m times the certified one: values shift by -m on
  // the first entry of each pair and by -3m on the second.
  const auto m = r.scaling;
  const auto& orig = reduced_original->quad.entries();
  for (std::size_t k = 0; k < orig.size(); ++k) {
    const auto expected = r.quad_entries[k].value - (k % 2 == 0 ? m : 3 * m);
    const auto got = val.value(orig[k]);
    if (got != expected)
      violate("untwisted entry " + orig[k].to_string() + " has value " + std::to_string(got) + ", expected " +
              std::to_string(expected));
  }

  const auto second = residue_forms(quad, val).second;
  for (const auto& e : second.entries()) r.second_residue.push_back(e.to_string());
  auto verdict = witt_trivial(second, options.budget);
  if (branch == Branch::DivisionResidue && second.rank() != 0)
    violate("second residue form is not empty in the nonsplit residue configuration");
  if (m % 2 == 0 && verdict == Verdict::True) {
    const auto v2 = is_unramified(reduced_original->quad, val, options.budget);
    if (v2 == Verdict::False) violate("the untwisted reduct is ramified although the twist is a square");
    if (v2 == Verdict::Indeterminate) verdict = Verdict::Indeterminate;
  }
  r.verdict = std::string(to_string(verdict));

  if (!r.violations.empty() || verdict == Verdict::False)
    r.outcome = Outcome::Violated;
  else if (verdict == Verdict::Indeterminate)
    r.outcome = Outcome::Indeterminate;
  else
    r.outcome = Outcome::Verified;
  if (branch == Branch::Conic && ram.split_over_residue == std::optional<bool>(true))
    r.note = "no K-point adapted to the valuation within the search budget";
  return r;
}

nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["instance"] = r.instance;
  j["algebra"] = r.algebra;
  j["valuation"] = r.valuation;
  j["form"] = r.form;
  j["unit_presentation"] = r.unit_presentation;
  j["branch"] = r.branch;
  j["certified_diagonal"] = r.certified_diagonal;
  j["scaling"] = r.scaling;
  j["point"] = r.point ? nlohmann::ordered_json(*r.point) : nlohmann::ordered_json(nullptr);
  auto& entries = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"a", e.a}, {"b", e.b}, {"c", e.c}, {"norm", e.norm}, {"min_value", e.min_value}});
  auto& quad = j["quad_entries"] = nlohmann::ordered_json::array();
  for (const auto& e : r.quad_entries) quad.push_back({{"expr", e.expr}, {"value", e.value}});
  j["second_residue"] = r.second_residue;
  j["verdict"] = r.verdict;
  j["violations"] = r.violations;
  j["outcome"] = to_string(r.outcome);
  j["note"] = r.note;
  return j;
}

VerificationReport report_from_json(const nlohmann::ordered_json& j) {
  try {
    VerificationReport r;
    r.instance = j.at("instance").get<std::uint64_t>();
    r.algebra = j.at("algebra").get<std::string>();
    r.valuation = j.at("valuation").get<std::string>();
    r.form = j.at("form").get<std::string>();
    r.unit_presentation = j.at("unit_presentation").get<std::string>();
    r.branch = j.at("branch").get<std::string>();
    r.certified_diagonal = j.at("certified_diagonal").get<std::vector<std::string>>();
    r.scaling = j.at("scaling").get<std::int64_t>();
    if (!j.at("point").is_null()) r.point = j.at("point").get<std::string>();
    for (const auto& e : j.at("entries"))
      r.entries.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("c").get<std::string>(),
                           e.at("norm").get<std::string>(), e.at("min_value").get<std::int64_t>()});
    for (const auto& e : j.at("quad_entries"))
      r.quad_entries.push_back({e.at("expr").get<std::string>(), e.at("value").get<std::int64_t>()});
    r.second_residue = j.at("second_residue").get<std::vector<std::string>>();
    r.verdict = j.at("verdict").get<std::string>();
    r.violations = j.at("violations").get<std::vector<std::string>>();
    r.outcome = outcome_from_string(j.at("outcome").get<std::string>());
    r.note = j.at("note").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    raise(Errc::ParseError, std::string("verification report: ") + e.what());
  }
}

}  // namespace morita
