#include "morita/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <regex>
#include <variant>

namespace morita {

namespace detail {

struct RationalFunction {
  Polynomial num;
  Polynomial den;
};

struct ConicPair {
  FieldElement a;
  FieldElement b;
};

struct Payload {
  std::variant<mpq_class, std::int64_t, RationalFunction, ConicPair> value;
};

}  // namespace detail

namespace {

using detail::ConicPair;
using detail::Payload;
using detail::RationalFunction;

FieldElement wrap(const FieldPtr& f, mpq_class q) {
  q.canonicalize();
  return FieldElement(f, std::make_shared<const Payload>(Payload{std::move(q)}));
}

FieldElement wrap(const FieldPtr& f, std::int64_t r) {
  return FieldElement(f, std::make_shared<const Payload>(Payload{r}));
}

FieldElement wrap_rf(const FieldPtr& f, Polynomial num, Polynomial den) {
  return FieldElement(
      f, std::make_shared<const Payload>(Payload{RationalFunction{std::move(num), std::move(den)}}));
}

FieldElement wrap_conic(const FieldPtr& f, FieldElement a, FieldElement b) {
  return FieldElement(f, std::make_shared<const Payload>(Payload{ConicPair{std::move(a), std::move(b)}}));
}

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

__extension__ using i128 = __int128;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
  return static_cast<std::int64_t>(static_cast<i128>(a) * b % p);
}

std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  a = mod(a, p);
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::int64_t> sqrt_mod(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  // Tonelli-Shanks.
  std::int64_t q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::int64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::int64_t i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return std::min(r, p - r);
}

const RationalFunction& rf(const FieldElement& e) { return std::get<RationalFunction>(e.payload().value); }
const ConicPair& cp(const FieldElement& e) { return std::get<ConicPair>(e.payload().value); }

void check_same(const FieldElement& a, const FieldElement& b, std::string_view op) {
  if (!a.valid() || !b.valid()) raise(Errc::LevelMismatch, std::string(op) + ": uninitialized element");
  require_same_field(a.field(), b.field(), op);
}

bool is_simple_token(const std::string& s) {
  static const std::regex simple(R"(^-?[0-9]+(/[0-9]+)?$|^[A-Za-z_][A-Za-z0-9_]*(\^[0-9]+)?$)");
  return std::regex_match(s, simple);
}

std::string parenthesize(const std::string& s) { return is_simple_token(s) ? s : "(" + s + ")"; }

}  // namespace

// ---------------------------------------------------------------- Field

FieldPtr Field::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Rationals;
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr Field::finite(std::int64_t p) {
  if (p == 2) raise(Errc::EvenResidueChar, "characteristic 2 is not supported");
  if (!is_prime(p)) raise(Errc::InvalidDescriptor, "F_p needs an odd prime, got " + std::to_string(p));
  static std::mutex mu;
  static std::map<std::int64_t, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[p];
  if (!slot) {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::FiniteField;
    f->characteristic_ = p;
    slot = f;
  }
  return slot;
}

FieldPtr Field::function(FieldPtr base, std::string variable) {
  if (!base) raise(Errc::InvalidDescriptor, "function field needs a base");
  if (variable.empty() || !std::isalpha(static_cast<unsigned char>(variable[0])))
    raise(Errc::InvalidDescriptor, "bad variable name '" + variable + "'");
  if (base->has_symbol(variable)) raise(Errc::InvalidDescriptor, "variable '" + variable + "' already in use");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::FunctionField;
  f->characteristic_ = base->characteristic_;
  f->base_ = std::move(base);
  f->variable_ = std::move(variable);
  return f;
}

FieldPtr Field::conic(FieldPtr base, FieldElement d, FieldElement t, FieldPtr xfield) {
  if (!base) raise(Errc::InvalidDescriptor, "conic needs a base");
  d = embed(base, d);
  t = embed(base, t);
  if (d.is_zero() || t.is_zero()) raise(Errc::InvalidDescriptor, "conic parameters must be nonzero");
  if (base->has_symbol("x") || base->has_symbol("y"))
    raise(Errc::InvalidDescriptor, "conic base already uses the names x or y");
  if (!xfield) {
    xfield = Field::function(base, "x");
  } else if (xfield->kind() != FieldKind::FunctionField || xfield->variable() != "x" ||
             !same_field(xfield->base(), base)) {
    raise(Errc::InvalidDescriptor, "conic x-field must be base(x)");
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = FieldKind::Conic;
  f->characteristic_ = base->characteristic_;
  f->base_ = std::move(base);
  f->variable_ = "y";
  f->xfield_ = xfield;
  const FieldElement dx = embed(xfield, d), tx = embed(xfield, t), x = symbol(xfield, "x");
  f->y_squared_ = std::make_shared<const FieldElement>((one(xfield) - dx * x * x) / tx);
  f->d_ = std::make_shared<const FieldElement>(std::move(d));
  f->t_ = std::make_shared<const FieldElement>(std::move(t));
  return f;
}

const FieldPtr& Field::rational_function_field() const {
  if (kind_ != FieldKind::Conic) raise(Errc::LevelMismatch, "not a conic level");
  return xfield_;
}
const FieldElement& Field::conic_d() const {
  if (kind_ != FieldKind::Conic) raise(Errc::LevelMismatch, "not a conic level");
  return *d_;
}
const FieldElement& Field::conic_t() const {
  if (kind_ != FieldKind::Conic) raise(Errc::LevelMismatch, "not a conic level");
  return *t_;
}
const FieldElement& Field::y_squared() const {
  if (kind_ != FieldKind::Conic) raise(Errc::LevelMismatch, "not a conic level");
  return *y_squared_;
}

const Field& Field::prime_field() const {
  const Field* f = this;
  while (f->base_) f = f->base_.get();
  return *f;
}

bool Field::has_symbol(std::string_view name) const {
  switch (kind_) {
    case FieldKind::Rationals:
    case FieldKind::FiniteField:
      return false;
    case FieldKind::FunctionField:
      return variable_ == name || base_->has_symbol(name);
    case FieldKind::Conic:
      return name == "y" || xfield_->has_symbol(name);
  }
  return false;
}

std::string Field::describe() const {
  switch (kind_) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::FiniteField:
      return "F" + std::to_string(characteristic_);
    case FieldKind::FunctionField:
      return base_->describe() + "(" + variable_ + ")";
    case FieldKind::Conic:
      return base_->describe() + "(Q)[" + d_->to_string() + ", " + t_->to_string() + "]";
  }
  return "?";
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind() || a->characteristic() != b->characteristic()) return false;
  switch (a->kind()) {
    case FieldKind::Rationals:
    case FieldKind::FiniteField:
      return true;
    case FieldKind::FunctionField:
      return a->variable() == b->variable() && same_field(a->base(), b->base());
    case FieldKind::Conic:
      return same_field(a->base(), b->base()) && a->conic_d() == b->conic_d() && a->conic_t() == b->conic_t();
  }
  return false;
}

void require_same_field(const FieldPtr& a, const FieldPtr& b, std::string_view context) {
  if (!same_field(a, b))
    raise(Errc::LevelMismatch, std::string(context) + ": " + (a ? a->describe() : "null") + " vs " +
                                   (b ? b->describe() : "null"));
}

// ---------------------------------------------------------------- constructors

FieldElement zero(const FieldPtr& f) { return from_integer(f, 0L); }
FieldElement one(const FieldPtr& f) { return from_integer(f, 1L); }

FieldElement from_integer(const FieldPtr& f, const mpz_class& n) {
  switch (f->kind()) {
    case FieldKind::Rationals:
      return wrap(f, mpq_class(n));
    case FieldKind::FiniteField: {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(f->characteristic()));
      return wrap(f, static_cast<std::int64_t>(r.get_si()));
    }
    case FieldKind::FunctionField:
      return wrap_rf(f, Polynomial::constant(from_integer(f->base(), n)), Polynomial::constant(one(f->base())));
    case FieldKind::Conic: {
      const auto& xf = f->rational_function_field();
      return wrap_conic(f, from_integer(xf, n), zero(xf));
    }
  }
  raise(Errc::InvalidDescriptor, "unknown field kind");
}

FieldElement from_integer(const FieldPtr& f, long n) { return from_integer(f, mpz_class(n)); }

FieldElement from_rational(const FieldPtr& f, const mpq_class& q) {
  if (f->kind() == FieldKind::Rationals) return wrap(f, q);
  return from_integer(f, q.get_num()) / from_integer(f, q.get_den());
}

FieldElement symbol(const FieldPtr& f, std::string_view name) {
  switch (f->kind()) {
    case FieldKind::Rationals:
    case FieldKind::FiniteField:
      break;
    case FieldKind::FunctionField:
      if (f->variable() == name)
        return wrap_rf(f, Polynomial::monomial(one(f->base()), 1), Polynomial::constant(one(f->base())));
      if (f->base()->has_symbol(name)) return embed(f, symbol(f->base(), name));
      break;
    case FieldKind::Conic: {
      const auto& xf = f->rational_function_field();
      if (name == "y") return wrap_conic(f, zero(xf), one(xf));
      if (xf->has_symbol(name)) return wrap_conic(f, symbol(xf, name), zero(xf));
      break;
    }
  }
  raise(Errc::ParseError, "unknown symbol '" + std::string(name) + "' in " + f->describe());
}

FieldElement embed(const FieldPtr& target, const FieldElement& e) {
  if (same_field(target, e.field())) return e;
  switch (target->kind()) {
    case FieldKind::FunctionField: {
      auto c = embed(target->base(), e);
      return wrap_rf(target, Polynomial::constant(c), Polynomial::constant(one(target->base())));
    }
    case FieldKind::Conic: {
      const auto& xf = target->rational_function_field();
      return wrap_conic(target, embed(xf, e), zero(xf));
    }
    default:
      break;
  }
  raise(Errc::LevelMismatch, "cannot embed " + e.field()->describe() + " into " + target->describe());
}

FieldElement make_rational_function(const FieldPtr& f, Polynomial num, Polynomial den) {
  if (f->kind() != FieldKind::FunctionField) raise(Errc::LevelMismatch, "not a function field");
  require_same_field(num.coefficient_field(), f->base(), "rational function numerator");
  require_same_field(den.coefficient_field(), f->base(), "rational function denominator");
  if (den.is_zero()) raise(Errc::DivisionByZero, "zero denominator");
  if (num.is_zero()) return zero(f);
  if (den.degree() == 0) {
    if (den.is_one()) return wrap_rf(f, std::move(num), std::move(den));
    auto inv = den.leading().inverse();
    return wrap_rf(f, num.scaled(inv), Polynomial::constant(one(f->base())));
  }
  if (num.degree() > 0) {
    auto g = Polynomial::gcd(num, den);
    if (g.degree() > 0) {
      num = num.exact_quotient(g);
      den = den.exact_quotient(g);
    }
  }
  if (!den.leading().is_one()) {
    auto inv = den.leading().inverse();
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  return wrap_rf(f, std::move(num), std::move(den));
}

FieldElement make_conic_element(const FieldPtr& f, FieldElement a, FieldElement b) {
  if (f->kind() != FieldKind::Conic) raise(Errc::LevelMismatch, "not a conic level");
  const auto& xf = f->rational_function_field();
  return wrap_conic(f, embed(xf, a), embed(xf, b));
}

// ---------------------------------------------------------------- element ops

bool FieldElement::is_zero() const {
  const auto& v = payload().value;
  switch (v.index()) {
    case 0:
      return sgn(std::get<0>(v)) == 0;
    case 1:
      return std::get<1>(v) == 0;
    case 2:
      return std::get<2>(v).num.is_zero();
    default:
      return std::get<3>(v).a.is_zero() && std::get<3>(v).b.is_zero();
  }
}

bool FieldElement::is_one() const {
  const auto& v = payload().value;
  switch (v.index()) {
    case 0:
      return std::get<0>(v) == 1;
    case 1:
      return std::get<1>(v) == 1;
    case 2:
      return std::get<2>(v).num.is_one() && std::get<2>(v).den.is_one();
    default:
      return std::get<3>(v).a.is_one() && std::get<3>(v).b.is_zero();
  }
}

FieldElement FieldElement::operator-() const {
  const auto& v = payload().value;
  switch (v.index()) {
    case 0:
      return wrap(field_, mpq_class(-std::get<0>(v)));
    case 1: {
      auto r = std::get<1>(v);
      return wrap(field_, r == 0 ? 0 : field_->characteristic() - r);
    }
    case 2:
      return wrap_rf(field_, -std::get<2>(v).num, std::get<2>(v).den);
    default:
      return wrap_conic(field_, -std::get<3>(v).a, -std::get<3>(v).b);
  }
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same(a, b, "add");
  const auto& f = a.field();
  const auto& va = a.payload().value;
  const auto& vb = b.payload().value;
  switch (va.index()) {
    case 0:
      return wrap(f, mpq_class(std::get<0>(va) + std::get<0>(vb)));
    case 1:
      return wrap(f, mod(std::get<1>(va) + std::get<1>(vb), f->characteristic()));
    case 2: {
      const auto& x = std::get<2>(va);
      const auto& y = std::get<2>(vb);
      if (x.num.is_zero()) return b;
      if (y.num.is_zero()) return a;
      if (x.den.is_one() && y.den.is_one()) {
        auto n = x.num + y.num;
        return wrap_rf(f, std::move(n), x.den);
      }
      if (x.den == y.den) return make_rational_function(f, x.num + y.num, x.den);
      return make_rational_function(f, x.num * y.den + y.num * x.den, x.den * y.den);
    }
    default:
      return wrap_conic(f, std::get<3>(va).a + std::get<3>(vb).a, std::get<3>(va).b + std::get<3>(vb).b);
  }
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same(a, b, "mul");
  const auto& f = a.field();
  const auto& va = a.payload().value;
  const auto& vb = b.payload().value;
  switch (va.index()) {
    case 0:
      return wrap(f, mpq_class(std::get<0>(va) * std::get<0>(vb)));
    case 1:
      return wrap(f, mulmod(std::get<1>(va), std::get<1>(vb), f->characteristic()));
    case 2: {
      const auto& x = std::get<2>(va);
      const auto& y = std::get<2>(vb);
      if (x.num.is_zero()) return a;
      if (y.num.is_zero()) return b;
      if (x.den.is_one() && y.den.is_one()) return wrap_rf(f, x.num * y.num, x.den);
      return make_rational_function(f, x.num * y.num, x.den * y.den);
    }
    default: {
      const auto& x = std::get<3>(va);
      const auto& y = std::get<3>(vb);
      const auto& r = f->y_squared();
      auto A = x.a * y.a;
      if (!x.b.is_zero() && !y.b.is_zero()) A += x.b * y.b * r;
      auto B = x.a * y.b + x.b * y.a;
      return wrap_conic(f, std::move(A), std::move(B));
    }
  }
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) raise(Errc::DivisionByZero, "inverse of zero");
  const auto& v = payload().value;
  switch (v.index()) {
    case 0:
      return wrap(field_, mpq_class(1 / std::get<0>(v)));
    case 1: {
      const auto p = field_->characteristic();
      return wrap(field_, powmod(std::get<1>(v), static_cast<std::uint64_t>(p - 2), p));
    }
    case 2:
      return make_rational_function(field_, std::get<2>(v).den, std::get<2>(v).num);
    default: {
      const auto& x = std::get<3>(v);
      auto n = conic_norm(*this);
      auto ni = n.inverse();
      return wrap_conic(field_, x.a * ni, -(x.b * ni));
    }
  }
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  check_same(a, b, "div");
  return a * b.inverse();
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r = one(field_), base = *this;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  check_same(a, b, "eq");
  if (a.data_ == b.data_) return true;
  const auto& va = a.payload().value;
  const auto& vb = b.payload().value;
  switch (va.index()) {
    case 0:
      return std::get<0>(va) == std::get<0>(vb);
    case 1:
      return std::get<1>(va) == std::get<1>(vb);
    case 2:
      return std::get<2>(va).num == std::get<2>(vb).num && std::get<2>(va).den == std::get<2>(vb).den;
    default:
      return std::get<3>(va).a == std::get<3>(vb).a && std::get<3>(va).b == std::get<3>(vb).b;
  }
}

const mpq_class& FieldElement::as_rational() const {
  if (field_->kind() != FieldKind::Rationals) raise(Errc::LevelMismatch, "not a rational number");
  return std::get<0>(payload().value);
}
std::int64_t FieldElement::as_residue() const {
  if (field_->kind() != FieldKind::FiniteField) raise(Errc::LevelMismatch, "not a finite-field element");
  return std::get<1>(payload().value);
}
const Polynomial& FieldElement::numerator() const {
  if (field_->kind() != FieldKind::FunctionField) raise(Errc::LevelMismatch, "not a rational function");
  return rf(*this).num;
}
const Polynomial& FieldElement::denominator() const {
  if (field_->kind() != FieldKind::FunctionField) raise(Errc::LevelMismatch, "not a rational function");
  return rf(*this).den;
}
const FieldElement& FieldElement::conic_a() const {
  if (field_->kind() != FieldKind::Conic) raise(Errc::LevelMismatch, "not a conic element");
  return cp(*this).a;
}
const FieldElement& FieldElement::conic_b() const {
  if (field_->kind() != FieldKind::Conic) raise(Errc::LevelMismatch, "not a conic element");
  return cp(*this).b;
}

std::string FieldElement::to_string() const {
  const auto& v = payload().value;
  switch (v.index()) {
    case 0:
      return std::get<0>(v).get_str();
    case 1:
      return std::to_string(std::get<1>(v));
    case 2: {
      const auto& x = std::get<2>(v);
      auto num = x.num.to_string(field_->variable());
      if (x.den.is_one()) return num;
      return parenthesize(num) + "/" + parenthesize(x.den.to_string(field_->variable()));
    }
    default: {
      const auto& x = std::get<3>(v);
      if (x.b.is_zero()) return x.a.to_string();
      std::string bpart;
      if (x.b.is_one()) {
        bpart = "y";
      } else if ((-x.b).is_one()) {
        bpart = "-y";
      } else {
        auto s = x.b.to_string();
        bpart = (is_simple_token(s) ? s : "(" + s + ")") + "*y";
      }
      if (x.a.is_zero()) return bpart;
      if (bpart[0] == '-') return x.a.to_string() + " - " + bpart.substr(1);
      return x.a.to_string() + " + " + bpart;
    }
  }
}

FieldElement conic_norm(const FieldElement& e) {
  if (e.field()->kind() != FieldKind::Conic) raise(Errc::LevelMismatch, "conic_norm needs a conic element");
  const auto& x = cp(e);
  auto n = x.a * x.a;
  if (!x.b.is_zero()) n -= x.b * x.b * e.field()->y_squared();
  return n;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(FieldPtr f) : field_(std::move(f)) {}

Polynomial::Polynomial(FieldPtr f, std::vector<FieldElement> c) : field_(std::move(f)), c_(std::move(c)) {
  for (const auto& e : c_) require_same_field(e.field(), field_, "polynomial coefficient");
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::constant(const FieldElement& c) { return Polynomial(c.field(), {c}); }

Polynomial Polynomial::monomial(const FieldElement& c, std::size_t degree) {
  std::vector<FieldElement> v(degree + 1, zero(c.field()));
  v[degree] = c;
  return Polynomial(c.field(), std::move(v));
}

bool Polynomial::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

const FieldElement& Polynomial::leading() const {
  if (c_.empty()) raise(Errc::DivisionByZero, "leading coefficient of zero polynomial");
  return c_.back();
}

FieldElement Polynomial::coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : zero(field_); }

Polynomial Polynomial::operator-() const {
  Polynomial r(field_);
  r.c_.reserve(c_.size());
  for (const auto& e : c_) r.c_.push_back(-e);
  return r;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  require_same_field(a.field_, b.field_, "polynomial add");
  Polynomial r(a.field_);
  const auto n = std::max(a.c_.size(), b.c_.size());
  r.c_.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= a.c_.size())
      r.c_.push_back(b.c_[k]);
    else if (k >= b.c_.size())
      r.c_.push_back(a.c_[k]);
    else
      r.c_.push_back(a.c_[k] + b.c_[k]);
  }
  r.trim();
  return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_field(a.field_, b.field_, "polynomial mul");
  Polynomial r(a.field_);
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, zero(a.field_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t k = 0; k < a.c_.size(); ++k)
    if (!(a.c_[k] == b.c_[k])) return false;
  return true;
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
  Polynomial r(field_);
  if (c.is_zero()) return r;
  r.c_.reserve(c_.size());
  for (const auto& e : c_) r.c_.push_back(e * c);
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  require_same_field(field_, divisor.field_, "polynomial divmod");
  if (divisor.is_zero()) raise(Errc::DivisionByZero, "polynomial division by zero");
  Polynomial q(field_), r = *this;
  if (degree() < divisor.degree()) return {q, r};
  const auto inv = divisor.leading().inverse();
  const int dd = divisor.degree();
  q.c_.assign(static_cast<std::size_t>(degree() - dd + 1), zero(field_));
  while (!r.is_zero() && r.degree() >= dd) {
    const int shift = r.degree() - dd;
    auto coef = r.leading() * inv;
    q.c_[static_cast<std::size_t>(shift)] = coef;
    for (int k = 0; k <= dd; ++k) {
      auto& slot = r.c_[static_cast<std::size_t>(k + shift)];
      slot = slot - coef * divisor.c_[static_cast<std::size_t>(k)];
    }
    r.trim();
  }
  q.trim();
  return {q, r};
}

Polynomial Polynomial::exact_quotient(const Polynomial& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) raise(Errc::Degenerate, "polynomial division is not exact");
  return q;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading().is_one()) return *this;
  return scaled(leading().inverse());
}

FieldElement Polynomial::evaluate(const FieldElement& at) const {
  require_same_field(at.field(), field_, "polynomial evaluate");
  FieldElement r = zero(field_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::optional<Polynomial> Polynomial::sqrt_monic() const {
  if (is_zero()) return *this;
  if (!leading().is_one() || degree() % 2 != 0) return std::nullopt;
  const int m = degree() / 2;
  const auto two_inv = from_integer(field_, 2L).inverse();
  std::vector<FieldElement> r(static_cast<std::size_t>(m + 1), zero(field_));
  r[static_cast<std::size_t>(m)] = one(field_);
  for (int k = m - 1; k >= 0; --k) {
    auto s = c_[static_cast<std::size_t>(m + k)];
    for (int i = k + 1; i <= m - 1; ++i) s -= r[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(m + k - i)];
    r[static_cast<std::size_t>(k)] = s * two_inv;
  }
  Polynomial root(field_, std::move(r));
  if (!(root * root == *this)) return std::nullopt;
  return root;
}

std::string Polynomial::to_string(std::string_view var) const {
  if (c_.empty()) return "0";
  if (c_.size() == 1) return c_[0].to_string();
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const auto& c = c_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : (k == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(k));
    std::string term;
    auto cs = c.to_string();
    if (k == 0) {
      term = parenthesize(cs);
    } else if (c.is_one()) {
      term = mono;
    } else if ((-c).is_one() && c.field()->kind() != FieldKind::FiniteField) {
      term = "-" + mono;
    } else {
      term = parenthesize(cs) + "*" + mono;
    }
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  Parser(const FieldPtr& f, std::string_view s) : f_(f), s_(s) {}

  FieldElement parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    raise(Errc::ParseError, what + " at column " + std::to_string(pos_ + 1) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    const auto c = static_cast<unsigned char>(s_[pos_]);
    return std::isalnum(c) || c == '_' || c == '(';
  }

  FieldElement expr() {
    auto e = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        e = e + term();
      } else if (peek('-')) {
        ++pos_;
        e = e - term();
      } else {
        return e;
      }
    }
  }

  FieldElement term() {
    auto e = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        e = e * unary();
      } else if (peek('/')) {
        ++pos_;
        auto d = unary();
        if (d.is_zero()) fail("division by zero");
        e = e / d;
      } else if (starts_atom()) {
        e = e * power();  // implicit product, e.g. 3y
      } else {
        return e;
      }
    }
  }

  FieldElement unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  FieldElement power() {
    auto base = atom();
    if (!peek('^')) return base;
    ++pos_;
    bool neg = false;
    if (peek('-')) {
      neg = true;
      ++pos_;
    }
    skip();
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    const auto e = std::stoll(std::string(s_.substr(start, pos_ - start)));
    if (neg && base.is_zero()) fail("zero to a negative power");
    return base.pow(neg ? -e : e);
  }

  FieldElement atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const auto c = static_cast<unsigned char>(s_[pos_]);
    if (c == '(') {
      ++pos_;
      auto e = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(c)) {
      const auto start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return from_integer(f_, mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(c) || c == '_') {
      const auto start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const auto name = s_.substr(start, pos_ - start);
      if (!f_->has_symbol(name)) {
        pos_ = start;
        fail("unknown symbol '" + std::string(name) + "'");
      }
      return symbol(f_, name);
    }
    fail("unexpected '" + std::string(1, static_cast<char>(c)) + "'");
  }

  const FieldPtr& f_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElement parse_element(const FieldPtr& f, std::string_view text) {
  try {
    return Parser(f, text).parse();
  } catch (const MathError& e) {
    if (e.code() == Errc::DivisionByZero)
      raise(Errc::ParseError, std::string(e.what()) + " in \"" + std::string(text) + "\"");
    throw;
  }
}

// ---------------------------------------------------------------- square roots

std::optional<FieldElement> sqrt(const FieldElement& e) {
  const auto& f = e.field();
  if (e.is_zero()) return e;
  switch (f->kind()) {
    case FieldKind::Rationals: {
      const auto& q = e.as_rational();
      if (sgn(q) < 0) return std::nullopt;
      if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return std::nullopt;
      mpz_class n, d;
      mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
      mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
      return wrap(f, mpq_class(n, d));
    }
    case FieldKind::FiniteField: {
      auto r = sqrt_mod(e.as_residue(), f->characteristic());
      if (!r) return std::nullopt;
      return wrap(f, *r);
    }
    case FieldKind::FunctionField: {
      const auto& x = rf(e);
      const auto& lc = x.num.leading();
      auto s = sqrt(lc);
      if (!s) return std::nullopt;
      auto n = x.num.scaled(lc.inverse()).sqrt_monic();
      if (!n) return std::nullopt;
      auto d = x.den.sqrt_monic();
      if (!d) return std::nullopt;
      return make_rational_function(f, n->scaled(*s), *d);
    }
    case FieldKind::Conic: {
      const auto& x = cp(e);
      const auto& xf = f->rational_function_field();
      if (x.b.is_zero()) {
        if (auto s = sqrt(x.a)) return wrap_conic(f, *s, zero(xf));
        if (auto s = sqrt(x.a / f->y_squared())) return wrap_conic(f, zero(xf), *s);
        return std::nullopt;
      }
      // (C + D y)^2 = C^2 + D^2 r + 2 C D y; C^2 solves z^2 - A z + B^2 r / 4 = 0.
      auto n = sqrt(conic_norm(e));
      if (!n) return std::nullopt;
      const auto half = from_integer(xf, 2L).inverse();
      for (const auto& cand : {(x.a + *n) * half, (x.a - *n) * half}) {
        auto c = sqrt(cand);
        if (!c || c->is_zero()) continue;
        auto d = x.b * half / *c;
        auto r = wrap_conic(f, *c, d);
        if (r * r == e) return r;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- small elements

std::vector<FieldElement> small_elements(const FieldPtr& f, int height, int degree) {
  std::vector<FieldElement> out;
  switch (f->kind()) {
    case FieldKind::FiniteField:
      for (std::int64_t r = 0; r < f->characteristic(); ++r) out.push_back(wrap(f, r));
      return out;
    case FieldKind::Rationals: {
      out.push_back(zero(f));
      for (int h = 1; h <= height; ++h) {
        for (int den = 1; den <= h; ++den) {
          for (int num = (den == h ? 1 : h); num <= h; ++num) {
            if (std::gcd(num, den) != 1) continue;
            out.push_back(wrap(f, mpq_class(num, den)));
            out.push_back(wrap(f, mpq_class(-num, den)));
          }
        }
      }
      return out;
    }
    case FieldKind::FunctionField: {
      // Polynomials of bounded degree over a small coefficient pool.
      auto pool = small_elements(f->base(), std::max(1, height / 2), 0);
      if (pool.size() > 5) pool.resize(5);
      std::vector<std::vector<FieldElement>> polys{{}};
      for (int k = 0; k <= degree; ++k) {
        std::vector<std::vector<FieldElement>> next;
        for (const auto& p : polys)
          for (const auto& c : pool) {
            auto q = p;
            q.push_back(c);
            next.push_back(std::move(q));
          }
        polys = std::move(next);
      }
      for (auto& p : polys)
        out.push_back(make_rational_function(f, Polynomial(f->base(), std::move(p)),
                                             Polynomial::constant(one(f->base()))));
      std::stable_sort(out.begin(), out.end(), [](const FieldElement& a, const FieldElement& b) {
        return a.numerator().degree() < b.numerator().degree();
      });
      return out;
    }
    case FieldKind::Conic: {
      const auto& xf = f->rational_function_field();
      auto pool = small_elements(xf, height, degree);
      for (const auto& a : pool) out.push_back(wrap_conic(f, a, zero(xf)));
      for (const auto& b : pool)
        if (!b.is_zero())
          for (const auto& a : pool) out.push_back(wrap_conic(f, a, b));
      return out;
    }
  }
  return out;
}

}  // namespace morita
