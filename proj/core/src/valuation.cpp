#include "morita/valuation.hpp"

#include <algorithm>

#include "morita/faults.hpp"

namespace morita {

std::string HalfInteger::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

std::int64_t padic_value(const mpz_class& n, const mpz_class& p) {
  if (n == 0) return kInfiniteValue;
  mpz_class rest;
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::int64_t poly_value(const Valuation& inner, const Polynomial& f) {
  std::int64_t best = kInfiniteValue;
  for (const auto& c : f.coefficients())
    if (!c.is_zero()) best = std::min(best, inner.value(c));
  return best;
}

Polynomial reduce_poly(const Valuation& inner, const Polynomial& f, const FieldElement& scale) {
  std::vector<FieldElement> out;
  out.reserve(f.coefficients().size());
  for (const auto& c : f.coefficients()) out.push_back(inner.residue(c * scale));
  return Polynomial(inner.residue_field(), std::move(out));
}

}  // namespace

ValuationPtr Valuation::padic(std::int64_t p) {
  auto fp = Field::finite(p);  // rejects p = 2 and composites
  auto v = std::shared_ptr<Valuation>(new Valuation());
  v->kind_ = ValuationKind::PAdic;
  v->prime_ = p;
  v->domain_ = Field::rationals();
  v->residue_field_ = fp;
  v->uniformizer_ = from_integer(v->domain_, static_cast<long>(p));
  return v;
}

ValuationPtr Valuation::gauss(ValuationPtr inner, FieldPtr function_field) {
  if (!inner || !function_field || function_field->kind() != FieldKind::FunctionField)
    raise(Errc::InvalidDescriptor, "Gauss valuation needs a function field");
  require_same_field(function_field->base(), inner->domain(), "Gauss valuation coefficients");
  auto v = std::shared_ptr<Valuation>(new Valuation());
  v->kind_ = ValuationKind::Gauss;
  v->prime_ = inner->prime_;
  v->residue_field_ = Field::function(inner->residue_field(), function_field->variable());
  v->uniformizer_ = embed(function_field, inner->uniformizer());
  v->domain_ = std::move(function_field);
  v->inner_ = std::move(inner);
  return v;
}

ValuationPtr Valuation::conic_half_norm(ValuationPtr gauss, FieldPtr conic, ResidueConic residue_conic) {
  if (!gauss || gauss->kind() != ValuationKind::Gauss)
    raise(Errc::InvalidDescriptor, "half-norm valuation needs a Gauss valuation on K(x)");
  if (!conic || conic->kind() != FieldKind::Conic) raise(Errc::InvalidDescriptor, "not a conic level");
  require_same_field(conic->rational_function_field(), gauss->domain(), "half-norm valuation");
  const auto& base_v = *gauss->inner();
  const auto& d = conic->conic_d();
  const auto& t = conic->conic_t();
  if (!base_v.is_unit(d) || !base_v.is_unit(t))
    raise(Errc::RamifiedParameters,
          "conic parameters (" + d.to_string() + ", " + t.to_string() + ") are not units at " + base_v.describe());
  auto v = std::shared_ptr<Valuation>(new Valuation());
  v->kind_ = ValuationKind::ConicHalfNorm;
  v->prime_ = gauss->prime_;
  v->residue_field_ = Field::conic(base_v.residue_field(), base_v.residue(d), base_v.residue(t),
                                   gauss->residue_field());
  v->uniformizer_ = embed(conic, gauss->uniformizer());
  v->domain_ = std::move(conic);
  v->inner_ = std::move(gauss);
  v->residue_conic_ = residue_conic;
  return v;
}

std::int64_t Valuation::value(const FieldElement& e) const {
  require_same_field(e.field(), domain_, "valuation");
  if (e.is_zero()) return kInfiniteValue;
  switch (kind_) {
    case ValuationKind::PAdic: {
      const mpz_class p(static_cast<long>(prime_));
      const auto& q = e.as_rational();
      return padic_value(q.get_num(), p) - padic_value(q.get_den(), p);
    }
    case ValuationKind::Gauss:
      return poly_value(*inner_, e.numerator()) - poly_value(*inner_, e.denominator());
    case ValuationKind::ConicHalfNorm: {
      if (residue_conic_ != ResidueConic::Nonsplit) return value_via_norm(e);
      // Nonsplit residue conic: the norm form has anisotropic reduction.
      const std::int64_t fast = std::min(inner_->value(e.conic_a()), inner_->value(e.conic_b()));
      return faults::negate_fast_path.load(std::memory_order_relaxed) ? -fast : fast;
    }
  }
  return kInfiniteValue;
}

std::int64_t Valuation::value_via_norm(const FieldElement& e) const {
  if (kind_ != ValuationKind::ConicHalfNorm) raise(Errc::LevelMismatch, "value_via_norm needs a conic valuation");
  require_same_field(e.field(), domain_, "valuation");
  if (e.is_zero()) return kInfiniteValue;
  const auto n = inner_->value(conic_norm(e));
  if (n % 2 != 0)
    raise(Errc::NonIntegralValue, "norm of " + e.to_string() + " has odd value " + std::to_string(n));
  return n / 2;
}

FieldElement Valuation::residue(const FieldElement& e) const {
  require_same_field(e.field(), domain_, "residue");
  if (e.is_zero()) return zero(residue_field_);
  const auto v = value(e);
  if (v < 0) raise(Errc::NegativeValue, "residue of " + e.to_string() + " with value " + std::to_string(v));
  if (v > 0) return zero(residue_field_);
  switch (kind_) {
    case ValuationKind::PAdic: {
      const auto& q = e.as_rational();
      return from_rational(residue_field_, q);
    }
    case ValuationKind::Gauss: {
      const auto m = poly_value(*inner_, e.denominator());
      const auto scale = inner_->uniformizer().pow(-m);
      return make_rational_function(residue_field_, reduce_poly(*inner_, e.numerator(), scale),
                                    reduce_poly(*inner_, e.denominator(), scale));
    }
    case ValuationKind::ConicHalfNorm:
      return make_conic_element(residue_field_, inner_->residue(e.conic_a()), inner_->residue(e.conic_b()));
  }
  return zero(residue_field_);
}

std::string Valuation::describe() const {
  switch (kind_) {
    case ValuationKind::PAdic:
      return std::to_string(prime_) + "-adic";
    case ValuationKind::Gauss:
      return "Gauss(" + inner_->describe() + ") on " + domain_->describe();
    case ValuationKind::ConicHalfNorm:
      return "half-norm(" + inner_->describe() + ") on " + domain_->describe();
  }
  return "?";
}

}  // namespace morita
