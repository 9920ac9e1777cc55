#include "morita/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace morita {

namespace {

using json = nlohmann::json;

void allow_keys(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) raise(Errc::InvalidDescriptor, where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) raise(Errc::InvalidDescriptor, "unknown key '" + k + "' in " + where);
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) raise(Errc::InvalidDescriptor, where + " needs '" + key + "'");
  return j.at(key);
}

std::int64_t integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) raise(Errc::InvalidDescriptor, what + " must be an integer");
  return j.get<std::int64_t>();
}

FieldElement element(const FieldPtr& f, const json& j, const std::string& what) {
  if (j.is_number_integer()) return from_integer(f, static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) raise(Errc::InvalidDescriptor, what + " must be a string or an integer");
  try {
    return parse_element(f, j.get<std::string>());
  } catch (const MathError& e) {
    std::string message = e.what();
    const auto prefix = std::string(to_string(e.code())) + ": ";
    if (message.starts_with(prefix)) message.erase(0, prefix.size());
    raise(e.code(), what + ": " + message);
  }
}

FieldElement optional_element(const FieldPtr& f, const json& j, const char* key, const std::string& where) {
  return j.contains(key) ? element(f, j.at(key), where + "." + key) : zero(f);
}

Quaternion quaternion(const QuaternionAlgebra& q, const json& j, bool pure, const std::string& where) {
  if (pure)
    allow_keys(j, {"a", "b", "c"}, where);
  else
    allow_keys(j, {"w", "a", "b", "c"}, where);
  const auto& f = q.base();
  return Quaternion(q, optional_element(f, j, "w", where), optional_element(f, j, "a", where),
                    optional_element(f, j, "b", where), optional_element(f, j, "c", where));
}

QuadraticForm diagonal_form(const FieldPtr& f, const json& j, const std::string& where) {
  if (!j.is_array()) raise(Errc::InvalidDescriptor, where + " must be an array");
  std::vector<FieldElement> entries;
  for (std::size_t k = 0; k < j.size(); ++k) {
    entries.push_back(element(f, j[k], where + "[" + std::to_string(k) + "]"));
    if (entries.back().is_zero()) raise(Errc::ZeroEntry, where + "[" + std::to_string(k) + "] is zero");
  }
  return QuadraticForm(f, std::move(entries));
}

SkewHermitianForm parse_form(const QuaternionAlgebra& q, const json& j) {
  allow_keys(j, {"diag", "gram"}, "form");
  if (j.contains("diag") == j.contains("gram")) raise(Errc::InvalidDescriptor, "form needs exactly one of diag, gram");
  if (j.contains("diag")) {
    const auto& d = j.at("diag");
    if (!d.is_array() || d.empty()) raise(Errc::InvalidDescriptor, "form.diag must be a nonempty array");
    std::vector<Quaternion> entries;
    for (std::size_t k = 0; k < d.size(); ++k)
      entries.push_back(quaternion(q, d[k], true, "form.diag[" + std::to_string(k) + "]"));
    return SkewHermitianForm::diagonal(q, entries);
  }
  const auto& g = j.at("gram");
  if (!g.is_array()) raise(Errc::InvalidDescriptor, "form.gram must be an array of rows");
  QuaternionMatrix m;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g[k].is_array()) raise(Errc::InvalidDescriptor, "form.gram rows must be arrays");
    std::vector<Quaternion> row;
    for (std::size_t l = 0; l < g[k].size(); ++l)
      row.push_back(quaternion(q, g[k][l], false, "form.gram[" + std::to_string(k) + "][" + std::to_string(l) + "]"));
    m.push_back(std::move(row));
  }
  return SkewHermitianForm(q, std::move(m));
}

GeneratorSpec parse_generator(const json& j) {
  allow_keys(j, {"n", "n_max", "coeff_min", "coeff_max", "twist", "presentation", "algebra"}, "generator");
  GeneratorSpec g;
  auto size = [&](const char* key, std::size_t& out) {
    if (!j.contains(key)) return;
    const auto v = integer(j.at(key), std::string("generator.") + key);
    if (v < 0) raise(Errc::InvalidDescriptor, std::string("generator.") + key + " must be nonnegative");
    out = static_cast<std::size_t>(v);
  };
  size("n", g.n);
  size("n_max", g.n_max);
  if (j.contains("coeff_min")) g.coeff_min = integer(j.at("coeff_min"), "generator.coeff_min");
  if (j.contains("coeff_max")) g.coeff_max = integer(j.at("coeff_max"), "generator.coeff_max");
  if (j.contains("twist")) g.twist = integer(j.at("twist"), "generator.twist");
  if (j.contains("presentation")) g.presentation = integer(j.at("presentation"), "generator.presentation");
  if (j.contains("algebra")) {
    const auto mode = j.at("algebra").get<std::string>();
    if (mode == "fixed")
      g.algebra = AlgebraMode::Fixed;
    else if (mode == "random-split")
      g.algebra = AlgebraMode::RandomSplit;
    else
      raise(Errc::InvalidDescriptor, "generator.algebra must be 'fixed' or 'random-split'");
  }
  if (g.n == 0) raise(Errc::InvalidDescriptor, "generator.n must be positive");
  if (g.twist < 0 || g.presentation < 0) raise(Errc::InvalidDescriptor, "generator twist bounds must be nonnegative");
  if (g.coeff_min > g.coeff_max) raise(Errc::InvalidDescriptor, "generator coefficient range is empty");
  return g;
}

SearchBudget parse_budget(const json& j) {
  SearchBudget b;
  if (j.is_number_integer()) {
    b.max_vectors = integer(j, "budget");
    return b;
  }
  allow_keys(j, {"height", "poly_degree", "max_vectors"}, "budget");
  if (j.contains("height")) b.height = static_cast<int>(integer(j.at("height"), "budget.height"));
  if (j.contains("poly_degree")) b.poly_degree = static_cast<int>(integer(j.at("poly_degree"), "budget.poly_degree"));
  if (j.contains("max_vectors")) b.max_vectors = integer(j.at("max_vectors"), "budget.max_vectors");
  if (b.height < 1 || b.poly_degree < 0 || b.max_vectors < 1) raise(Errc::InvalidDescriptor, "budget out of range");
  return b;
}

}  // namespace

FieldPtr parse_field(const json& j) {
  if (!j.is_object() || !j.contains("kind")) raise(Errc::InvalidDescriptor, "field descriptor needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "rationals") {
    allow_keys(j, {"kind"}, "field");
    return Field::rationals();
  }
  if (kind == "finite") {
    allow_keys(j, {"kind", "p"}, "field");
    return Field::finite(integer(require(j, "p", "finite field"), "field.p"));
  }
  if (kind == "function") {
    allow_keys(j, {"kind", "base", "var"}, "field");
    const auto var = j.value("var", std::string("s"));
    return Field::function(parse_field(require(j, "base", "function field")), var);
  }
  if (kind == "conic") {
    allow_keys(j, {"kind", "base", "d", "t"}, "field");
    const auto base = parse_field(require(j, "base", "conic field"));
    return Field::conic(base, element(base, require(j, "d", "conic field"), "field.d"),
                        element(base, require(j, "t", "conic field"), "field.t"));
  }
  raise(Errc::InvalidDescriptor, "unknown field kind '" + kind + "'");
}

ValuationPtr parse_valuation(const json& j, const FieldPtr& domain) {
  if (!j.is_object() || !j.contains("kind")) raise(Errc::InvalidDescriptor, "valuation descriptor needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "padic") {
    allow_keys(j, {"kind", "p"}, "valuation");
    if (domain->kind() != FieldKind::Rationals)
      raise(Errc::InvalidDescriptor, "a p-adic valuation lives on Q, not " + domain->describe());
    return Valuation::padic(integer(require(j, "p", "p-adic valuation"), "valuation.p"));
  }
  if (kind == "gauss") {
    allow_keys(j, {"kind", "inner"}, "valuation");
    if (domain->kind() != FieldKind::FunctionField)
      raise(Errc::InvalidDescriptor, "a Gauss valuation lives on a rational function field");
    return Valuation::gauss(parse_valuation(require(j, "inner", "Gauss valuation"), domain->base()), domain);
  }
  if (kind == "conic_half_norm") {
    allow_keys(j, {"kind", "inner", "residue_conic"}, "valuation");
    if (domain->kind() != FieldKind::Conic) raise(Errc::InvalidDescriptor, "a half-norm valuation lives on a conic");
    const auto gauss = parse_valuation(require(j, "inner", "half-norm valuation"), domain->rational_function_field());
    const auto hint = j.value("residue_conic", std::string("unknown"));
    auto rc = ResidueConic::Unknown;
    if (hint == "split")
      rc = ResidueConic::Split;
    else if (hint == "nonsplit")
      rc = ResidueConic::Nonsplit;
    else if (hint != "unknown")
      raise(Errc::InvalidDescriptor, "residue_conic must be split, nonsplit or unknown");
    return Valuation::conic_half_norm(gauss, domain, rc);
  }
  raise(Errc::InvalidDescriptor, "unknown valuation kind '" + kind + "'");
}

Scenario parse_scenario(const json& j) {
  try {
    allow_keys(j,
               {"field", "valuation", "quaternion", "form", "point", "entries", "other_entries", "generator", "trials",
                "seed", "budget"},
               "scenario");
    Scenario s;
    s.field = parse_field(require(j, "field", "scenario"));
    if (j.contains("valuation")) s.valuation = parse_valuation(j.at("valuation"), s.field);
    if (j.contains("quaternion")) {
      const auto& q = j.at("quaternion");
      allow_keys(q, {"d", "t"}, "quaternion");
      s.algebra = QuaternionAlgebra(s.field, element(s.field, require(q, "d", "quaternion"), "quaternion.d"),
                                    element(s.field, require(q, "t", "quaternion"), "quaternion.t"));
    }
    if (j.contains("form")) {
      if (!s.algebra) raise(Errc::InvalidDescriptor, "a form needs a quaternion algebra");
      s.form = parse_form(*s.algebra, j.at("form"));
    }
    if (j.contains("point")) {
      const auto& p = j.at("point");
      allow_keys(p, {"x", "y"}, "point");
      s.point = ConicPoint{element(s.field, require(p, "x", "point"), "point.x"),
                           element(s.field, require(p, "y", "point"), "point.y")};
    }
    if (j.contains("entries")) s.entries = diagonal_form(s.field, j.at("entries"), "entries");
    if (j.contains("other_entries")) s.other_entries = diagonal_form(s.field, j.at("other_entries"), "other_entries");
    if (j.contains("generator")) s.generator = parse_generator(j.at("generator"));
    if (j.contains("trials")) {
      const auto t = integer(j.at("trials"), "trials");
      if (t < 1) raise(Errc::InvalidDescriptor, "trials must be positive");
      s.trials = static_cast<std::size_t>(t);
    }
    if (j.contains("seed")) s.seed = static_cast<std::uint64_t>(integer(j.at("seed"), "seed"));
    if (j.contains("budget")) s.budget = parse_budget(j.at("budget"));
    return s;
  } catch (const json::exception& e) {
    raise(Errc::ParseError, std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(Errc::ParseError, "cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    raise(Errc::ParseError, path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

nlohmann::ordered_json to_json(const QuadraticForm& q) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : q.entries()) arr.push_back(e.to_string());
  return arr;
}

nlohmann::ordered_json to_json(const Quaternion& u) {
  return {{"w", u.w().to_string()}, {"a", u.a().to_string()}, {"b", u.b().to_string()}, {"c", u.c().to_string()}};
}

nlohmann::ordered_json to_json(const RamificationReport& r) {
  nlohmann::ordered_json j;
  j["status"] = to_string(r.status);
  j["residue_class"] = r.residue_class.to_string();
  j["residue_field"] = r.residue_class.field()->describe();
  j["unit_presentation"] = r.unit_rep ? nlohmann::ordered_json(r.unit_rep->to_string()) : nlohmann::ordered_json(nullptr);
  j["isomorphism_over_base"] = r.to_unit_rep.has_value();
  j["split_over_completion"] = r.split_over_completion;
  j["residue_algebra"] = r.residue_algebra ? nlohmann::ordered_json(r.residue_algebra->to_string()) : nlohmann::ordered_json(nullptr);
  j["residue_algebra_split"] = r.split_over_residue ? nlohmann::ordered_json(*r.split_over_residue) : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json to_json(const GoodReductionCertificate& c) {
  nlohmann::ordered_json j;
  j["verdict"] = to_string(c.verdict);
  auto values = nlohmann::ordered_json::array();
  for (const auto& v : c.values) values.push_back(v.to_string());
  j["values"] = values;
  if (c.diagonal) {
    auto d = nlohmann::ordered_json::array();
    for (const auto& e : *c.diagonal) d.push_back(e.to_string());
    j["diagonal"] = d;
    j["scaling"] = *c.scaling;
  } else {
    j["diagonal"] = nullptr;
    j["scaling"] = nullptr;
  }
  j["note"] = c.note;
  return j;
}

}  // namespace morita
