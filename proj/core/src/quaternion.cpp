#include "morita/quaternion.hpp"

#include <map>

#include "morita/faults.hpp"

namespace morita {

// ---------------------------------------------------------------- algebra

QuaternionAlgebra::QuaternionAlgebra(FieldPtr base, FieldElement d, FieldElement t)
    : base_(std::move(base)), d_(embed(base_, d)), t_(embed(base_, t)) {
  if (d_.is_zero() || t_.is_zero()) raise(Errc::InvalidDescriptor, "quaternion parameters must be nonzero");
  if (base_->characteristic() == 2) raise(Errc::EvenResidueChar, "characteristic 2");
}

bool operator==(const QuaternionAlgebra& a, const QuaternionAlgebra& b) {
  return same_field(a.base_, b.base_) && a.d_ == b.d_ && a.t_ == b.t_;
}

std::string QuaternionAlgebra::to_string() const { return "(" + d_.to_string() + ", " + t_.to_string() + ")"; }

// ---------------------------------------------------------------- elements

Quaternion::Quaternion(QuaternionAlgebra algebra, FieldElement w, FieldElement a, FieldElement b, FieldElement c)
    : algebra_(std::move(algebra)) {
  const auto& f = algebra_.base();
  c_ = {embed(f, w), embed(f, a), embed(f, b), embed(f, c)};
}

Quaternion Quaternion::scalar(const QuaternionAlgebra& q, const FieldElement& w) {
  const auto z = morita::zero(q.base());
  return Quaternion(q, w, z, z, z);
}

Quaternion Quaternion::pure(const QuaternionAlgebra& q, const FieldElement& a, const FieldElement& b,
                            const FieldElement& c) {
  return Quaternion(q, morita::zero(q.base()), a, b, c);
}

Quaternion Quaternion::zero(const QuaternionAlgebra& q) { return scalar(q, morita::zero(q.base())); }

Quaternion Quaternion::i(const QuaternionAlgebra& q) {
  const auto z = morita::zero(q.base());
  return pure(q, one(q.base()), z, z);
}

Quaternion Quaternion::j(const QuaternionAlgebra& q) {
  const auto z = morita::zero(q.base());
  return pure(q, z, one(q.base()), z);
}

Quaternion Quaternion::ij(const QuaternionAlgebra& q) {
  const auto z = morita::zero(q.base());
  return pure(q, z, z, one(q.base()));
}

bool Quaternion::is_zero() const {
  for (const auto& e : c_)
    if (!e.is_zero()) return false;
  return true;
}

Quaternion Quaternion::conj() const { return Quaternion(algebra_, c_[0], -c_[1], -c_[2], -c_[3]); }

FieldElement Quaternion::nrd() const {
  const auto& d = algebra_.d();
  const auto& t = algebra_.t();
  return c_[0] * c_[0] - d * c_[1] * c_[1] - t * c_[2] * c_[2] + d * t * c_[3] * c_[3];
}

Quaternion Quaternion::scaled(const FieldElement& lambda) const {
  const auto l = embed(algebra_.base(), lambda);
  return Quaternion(algebra_, c_[0] * l, c_[1] * l, c_[2] * l, c_[3] * l);
}

Quaternion Quaternion::operator-() const { return Quaternion(algebra_, -c_[0], -c_[1], -c_[2], -c_[3]); }

Quaternion Quaternion::inverse() const {
  const auto n = nrd();
  if (n.is_zero()) raise(Errc::Degenerate, "quaternion " + to_string() + " has zero norm");
  return conj().scaled(n.inverse());
}

namespace {

void check_algebra(const Quaternion& x, const Quaternion& y) {
  if (!(x.algebra() == y.algebra()))
    raise(Errc::AlgebraMismatch, x.algebra().to_string() + " vs " + y.algebra().to_string());
}

std::string coefficient_term(const FieldElement& c, const char* unit) {
  if (c.is_one()) return unit;
  if ((-c).is_one() && c.field()->kind() != FieldKind::FiniteField) return std::string("-") + unit;
  const auto s = c.to_string();
  const bool simple = s.find_first_of(" (") == std::string::npos;
  return (simple ? s : "(" + s + ")") + "*" + unit;
}

}  // namespace

Quaternion operator+(const Quaternion& x, const Quaternion& y) {
  check_algebra(x, y);
  return Quaternion(x.algebra_, x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2], x.c_[3] + y.c_[3]);
}

Quaternion operator-(const Quaternion& x, const Quaternion& y) { return x + (-y); }

Quaternion operator*(const Quaternion& x, const Quaternion& y) {
  check_algebra(x, y);
  const auto& d = x.algebra_.d();
  const auto& t = x.algebra_.t();
  const auto& [w1, a1, b1, c1] = x.c_;
  const auto& [w2, a2, b2, c2] = y.c_;
  auto w = w1 * w2 + d * a1 * a2 + t * b1 * b2 - d * t * c1 * c2;
  auto a = w1 * a2 + a1 * w2 - t * b1 * c2 + t * c1 * b2;
  auto b = w1 * b2 + b1 * w2 + d * a1 * c2 - d * c1 * a2;
  auto c = w1 * c2 + c1 * w2 + a1 * b2 - b1 * a2;
  return Quaternion(x.algebra_, std::move(w), std::move(a), std::move(b), std::move(c));
}

bool operator==(const Quaternion& x, const Quaternion& y) {
  check_algebra(x, y);
  for (std::size_t k = 0; k < 4; ++k)
    if (!(x.c_[k] == y.c_[k])) return false;
  return true;
}

std::string Quaternion::to_string() const {
  static const char* units[] = {"", "i", "j", "ij"};
  std::string out;
  for (std::size_t k = 0; k < 4; ++k) {
    if (c_[k].is_zero()) continue;
    auto term = k == 0 ? c_[0].to_string() : coefficient_term(c_[k], units[k]);
    if (k == 0 && term.find(' ') != std::string::npos) term = "(" + term + ")";
    if (out.empty())
      out = term;
    else if (term[0] == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

HalfInteger extval(const Quaternion& u, const Valuation& v) {
  if (u.is_zero()) raise(Errc::ZeroElement, "extval of the zero quaternion");
  const auto n = u.nrd();
  if (n.is_zero()) raise(Errc::Degenerate, "quaternion " + u.to_string() + " has zero norm");
  return HalfInteger::from_doubled(v.value(n));
}

Matrix left_regular(const Quaternion& u) {
  const auto& q = u.algebra();
  const Quaternion basis[] = {Quaternion::scalar(q, one(q.base())), Quaternion::i(q), Quaternion::j(q),
                              Quaternion::ij(q)};
  Matrix m(4, std::vector<FieldElement>(4));
  for (std::size_t c = 0; c < 4; ++c) {
    const auto col = u * basis[c];
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = col.coords()[r];
  }
  return m;
}

QuadraticForm norm_form(const QuaternionAlgebra& q) {
  return QuadraticForm(q.base(), {one(q.base()), -q.d(), -q.t(), q.d() * q.t()});
}

// ---------------------------------------------------------------- isomorphisms

AlgebraIsomorphism::AlgebraIsomorphism(QuaternionAlgebra source, Quaternion image_i, Quaternion image_j)
    : source_(std::move(source)), image_i_(std::move(image_i)), image_j_(std::move(image_j)) {
  check_algebra(image_i_, image_j_);
  const auto& tgt = image_i_.algebra();
  require_same_field(source_.base(), tgt.base(), "algebra isomorphism");
  const auto ii = image_i_ * image_i_;
  const auto jj = image_j_ * image_j_;
  if (!(ii == Quaternion::scalar(tgt, source_.d())) || !(jj == Quaternion::scalar(tgt, source_.t())) ||
      !(image_i_ * image_j_ == -(image_j_ * image_i_)))
    raise(Errc::InvalidDescriptor, "images do not satisfy the relations of " + source_.to_string());
}

AlgebraIsomorphism AlgebraIsomorphism::identity(const QuaternionAlgebra& q) {
  return AlgebraIsomorphism(q, Quaternion::i(q), Quaternion::j(q));
}

Quaternion AlgebraIsomorphism::apply(const Quaternion& u) const {
  if (!(u.algebra() == source_)) raise(Errc::AlgebraMismatch, "isomorphism applied outside its source");
  const auto& tgt = target();
  return Quaternion::scalar(tgt, u.w()) + image_i_.scaled(u.a()) + image_j_.scaled(u.b()) +
         (image_i_ * image_j_).scaled(u.c());
}

AlgebraIsomorphism AlgebraIsomorphism::then(const AlgebraIsomorphism& next) const {
  return AlgebraIsomorphism(source_, next.apply(image_i_), next.apply(image_j_));
}

AlgebraIsomorphism AlgebraIsomorphism::inverse() const {
  const auto& f = source_.base();
  Matrix m(4, std::vector<FieldElement>(4));
  const Quaternion images[] = {Quaternion::scalar(target(), one(f)), image_i_, image_j_, image_i_ * image_j_};
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 4; ++r) m[r][c] = images[c].coords()[r];
  const auto inv = morita::inverse(f, m);
  auto column = [&](std::size_t c) { return Quaternion(source_, inv[0][c], inv[1][c], inv[2][c], inv[3][c]); };
  return AlgebraIsomorphism(target(), column(1), column(2));
}

// ---------------------------------------------------------------- ramification

std::string_view to_string(RamificationStatus s) noexcept {
  return s == RamificationStatus::Unramified ? "Unramified" : "Ramified";
}

namespace {

std::int64_t floor_half(std::int64_t k) { return k >= 0 ? k / 2 : -((1 - k) / 2); }

FieldElement square_class_rep(const FieldElement& c) {
  const auto& f = c.field();
  if (f->kind() != FieldKind::FiniteField) return c;
  if (is_square(c)) return one(f);
  for (long r = 2;; ++r)
    if (!is_square(from_integer(f, r))) return from_integer(f, r);
}

// (d, t) -> (d pi^-2a, t pi^-2b) via i -> pi^a I, j -> pi^b J.
AlgebraIsomorphism strip_squares(const QuaternionAlgebra& q, const Valuation& v, std::int64_t a, std::int64_t b) {
  const auto& pi = embed(q.base(), v.uniformizer());
  QuaternionAlgebra next(q.base(), q.d() * pi.pow(-2 * a), q.t() * pi.pow(-2 * b));
  return AlgebraIsomorphism(q, Quaternion::i(next).scaled(pi.pow(a)), Quaternion::j(next).scaled(pi.pow(b)));
}

// (d, t) -> (d, -dt) via i -> I, j -> I J / d.
AlgebraIsomorphism rotate(const QuaternionAlgebra& q) {
  QuaternionAlgebra next(q.base(), q.d(), -(q.d() * q.t()));
  return AlgebraIsomorphism(q, Quaternion::i(next), (Quaternion::i(next) * Quaternion::j(next)).scaled(q.d().inverse()));
}

// (d, t) -> (t, d) via i -> J, j -> I.
AlgebraIsomorphism swap_slots(const QuaternionAlgebra& q) {
  QuaternionAlgebra next(q.base(), q.t(), q.d());
  return AlgebraIsomorphism(q, Quaternion::j(next), Quaternion::i(next));
}

// (d, s^2) -> (1, 1). Built as the inverse of (1, 1) -> (d, s^2) with
// I -> ((1 + 1/d)/2) i + ((1 - 1/d)/(2s)) ij and J -> j/s.
AlgebraIsomorphism split_square_slot(const QuaternionAlgebra& q, const FieldElement& s) {
  const auto& f = q.base();
  QuaternionAlgebra m2(f, one(f), one(f));
  const auto half = from_integer(f, 2L).inverse();
  const auto di = q.d().inverse();
  const auto alpha = (one(f) + di) * half;
  const auto beta = (one(f) - di) * half / s;
  const auto z = zero(f);
  AlgebraIsomorphism from_m2(m2, Quaternion::pure(q, alpha, z, beta), Quaternion::pure(q, z, s.inverse(), z));
  return from_m2.inverse();
}

// ---- splitness over F_p(s) via tame residues at every relevant place.

Polynomial poly_mod(const Polynomial& a, const Polynomial& m) { return a.divmod(m).second; }

Polynomial poly_powmod(Polynomial base, std::uint64_t e, const Polynomial& m) {
  Polynomial r = Polynomial::constant(one(m.coefficient_field()));
  base = poly_mod(base, m);
  while (e) {
    if (e & 1) r = poly_mod(r * base, m);
    base = poly_mod(base * base, m);
    e >>= 1;
  }
  return r;
}

int order_at(Polynomial f, const Polynomial& p) {
  int k = 0;
  for (;;) {
    auto [q, r] = f.divmod(p);
    if (!r.is_zero()) return k;
    f = std::move(q);
    ++k;
  }
}

// Monic irreducible factors of f over F_p by trial division in increasing degree.
std::vector<Polynomial> irreducible_factors(Polynomial f) {
  std::vector<Polynomial> out;
  if (f.degree() <= 0) return out;
  f = f.monic();
  const auto& fp = f.coefficient_field();
  const auto p = fp->characteristic();
  for (int deg = 1; 2 * deg <= f.degree(); ++deg) {
    std::int64_t total = 1;
    for (int k = 0; k < deg; ++k) total *= p;
    for (std::int64_t code = 0; code < total && 2 * deg <= f.degree(); ++code) {
      std::vector<FieldElement> c;
      auto x = code;
      for (int k = 0; k < deg; ++k, x /= p) c.push_back(from_integer(fp, static_cast<long>(x % p)));
      c.push_back(one(fp));
      Polynomial cand(fp, std::move(c));
      if (f.divmod(cand).second.is_zero()) {
        out.push_back(cand);
        while (f.divmod(cand).second.is_zero()) f = f.exact_quotient(cand);
      }
    }
  }
  if (f.degree() > 0) out.push_back(f);
  return out;
}

bool splits_over_rational_function_field(const FieldElement& d, const FieldElement& t) {
  const auto& f = d.field();
  const auto& fp = f->base();
  const auto p = fp->characteristic();
  std::vector<Polynomial> places;
  for (const auto* poly : {&d.numerator(), &d.denominator(), &t.numerator(), &t.denominator()})
    for (auto& factor : irreducible_factors(*poly)) {
      bool seen = false;
      for (const auto& q : places) seen = seen || q == factor;
      if (!seen) places.push_back(factor);
    }
  auto ord = [](const FieldElement& e, const Polynomial& P) {
    return order_at(e.numerator(), P) - order_at(e.denominator(), P);
  };
  for (const auto& P : places) {
    const int a = ord(d, P), b = ord(t, P);
    auto c = d.pow(b) * t.pow(-a);
    if ((a * b) % 2 != 0) c = -c;
    // Euler's criterion in F_p[s]/(P), with q = p^deg P.
    std::uint64_t q = 1;
    for (int k = 0; k < P.degree(); ++k) q *= static_cast<std::uint64_t>(p);
    const auto unit = poly_mod(c.numerator() * c.denominator(), P);
    if (!poly_powmod(unit, (q - 1) / 2, P).is_one()) return false;
  }
  // Place at infinity: uniformizer 1/s, value deg(den) - deg(num).
  auto deg_value = [](const FieldElement& e) { return e.denominator().degree() - e.numerator().degree(); };
  const int a = deg_value(d), b = deg_value(t);
  auto c = d.pow(b) * t.pow(-a);
  if ((a * b) % 2 != 0) c = -c;
  return is_square(c.numerator().leading());
}

}  // namespace

bool residue_algebra_splits(const QuaternionAlgebra& q) {
  const auto& f = q.base();
  if (f->kind() == FieldKind::FiniteField) {
    // A point on d x^2 + t y^2 = 1, by exhaustion.
    for (long x = 0; x < f->characteristic(); ++x) {
      const auto xe = from_integer(f, x);
      if (is_square((one(f) - q.d() * xe * xe) / q.t())) return true;
    }
    return false;
  }
  if (f->kind() == FieldKind::FunctionField && f->base()->kind() == FieldKind::FiniteField)
    return splits_over_rational_function_field(q.d(), q.t());
  raise(Errc::Unsupported, "splitness is only decided over F_p and F_p(s)");
}

RamificationReport ramification(const QuaternionAlgebra& q, const Valuation& v) {
  require_same_field(q.base(), v.domain(), "ramification");
  if (v.residue_field()->characteristic() == 2) raise(Errc::EvenResidueChar, "residue characteristic 2");
  RamificationReport report;
  const auto alpha = v.value(q.d());
  const auto beta = v.value(q.t());
  auto tame = q.d().pow(beta) * q.t().pow(-alpha);
  if ((alpha * beta) % 2 != 0) tame = -tame;
  const auto cbar = v.residue(tame);
  report.residue_class = square_class_rep(cbar);
  if (!is_square(cbar)) return report;
  report.status = RamificationStatus::Unramified;

  auto finish_residue = [&](const QuaternionAlgebra& rep) {
    if (!v.is_unit(rep.d()) || !v.is_unit(rep.t())) return;
    QuaternionAlgebra res(v.residue_field(), v.residue(rep.d()), v.residue(rep.t()));
    report.residue_algebra = res;
    report.split_over_residue = residue_algebra_splits(res);
  };

  if (faults::drop_unit_representation.load(std::memory_order_relaxed)) {
    report.unit_rep = q;
    report.to_unit_rep = AlgebraIsomorphism::identity(q);
    finish_residue(q);
    return report;
  }

  auto iso = AlgebraIsomorphism::identity(q);
  for (;;) {
    const auto& cur = iso.target();
    const auto vd = v.value(cur.d()), vt = v.value(cur.t());
    if (floor_half(vd) != 0 || floor_half(vt) != 0) {
      iso = iso.then(strip_squares(cur, v, floor_half(vd), floor_half(vt)));
      continue;
    }
    if (vd == 0 && vt == 0) {
      report.unit_rep = cur;
      report.to_unit_rep = iso;
      break;
    }
    if (vd == 1 && vt == 1) {
      iso = iso.then(rotate(cur));
      continue;
    }
    // One odd slot; the other is a unit whose residue is a square, so the
    // algebra splits over the completion.
    const auto& f = q.base();
    report.split_over_completion = true;
    report.unit_rep = QuaternionAlgebra(f, one(f), one(f));
    auto oriented = vt == 0 ? iso : iso.then(swap_slots(cur));
    if (auto s = sqrt(oriented.target().t())) report.to_unit_rep = oriented.then(split_square_slot(oriented.target(), *s));
    break;
  }
  finish_residue(*report.unit_rep);
  return report;
}

QuaternionAlgebra residue_quaternion(const QuaternionAlgebra& q, const Valuation& v) {
  auto r = ramification(q, v);
  if (r.status != RamificationStatus::Unramified || !r.residue_algebra)
    raise(Errc::RamifiedAlgebra, q.to_string() + " is ramified at " + v.describe());
  return *r.residue_algebra;
}

}  // namespace morita
