#include "morita/morita.hpp"

#include <set>
#include <stdexcept>

namespace morita {

namespace {

Matrix mat2(const FieldElement& a, const FieldElement& b, const FieldElement& c, const FieldElement& d) {
  return {{a, b}, {c, d}};
}

Matrix add(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t l = 0; l < a[k].size(); ++l) r[k][l] = a[k][l] + b[k][l];
  return r;
}

Matrix scaled(const Matrix& a, const FieldElement& c) {
  Matrix r = a;
  for (auto& row : r)
    for (auto& e : row) e = e * c;
  return r;
}

void require_pure_diagonal(const SkewHermitianForm& h) {
  if (!h.is_diagonal()) raise(Errc::InvalidDescriptor, "the Morita formula needs a diagonal form");
  for (const auto& e : h.diagonal_entries()) {
    if (e.is_zero()) raise(Errc::ZeroEntry, "zero diagonal entry");
    if (!e.is_pure()) raise(Errc::InvalidDescriptor, "diagonal entry " + e.to_string() + " is not pure");
  }
}

QuadraticForm pairs(const FieldPtr& f, const std::vector<Quaternion>& diag, const FieldElement& x,
                    const FieldElement& y) {
  std::vector<FieldElement> entries;
  for (const auto& delta : diag) {
    const auto e = linear_entry(delta, x, y);
    if (e.is_zero()) raise(Errc::DegenerateSpecialization, "entry of " + delta.to_string() + " vanishes");
    entries.push_back(e);
    entries.push_back(-(e * embed(f, delta.nrd())));
  }
  return QuadraticForm(f, std::move(entries));
}

}  // namespace

FieldPtr conic_field(const QuaternionAlgebra& q) { return Field::conic(q.base(), q.d(), q.t()); }

Matrix SplittingMatrices::image(const Quaternion& u) const {
  const auto emb = [&](const FieldElement& c) { return embed(field, c); };
  const auto z = zero(field);
  auto m = mat2(emb(u.w()), z, z, emb(u.w()));
  m = add(m, scaled(i, emb(u.a())));
  m = add(m, scaled(j, emb(u.b())));
  return add(m, scaled(ij, emb(u.c())));
}

SplittingMatrices splitting_matrices(const QuaternionAlgebra& q) {
  SplittingMatrices s;
  s.field = conic_field(q);
  const auto& f = s.field;
  const auto d = embed(f, q.d()), t = embed(f, q.t());
  const auto x = symbol(f, "x"), y = symbol(f, "y");
  const auto dt = d * t;
  s.i = mat2(d * x, -y, -(dt * y), -(d * x));
  s.j = mat2(t * y, x, dt * x, -(t * y));
  s.ij = mat2(zero(f), one(f), -dt, zero(f));

  const auto id = identity_matrix(f, 2);
  const Matrix zero2 = scaled(id, zero(f));
  if (multiply(s.i, s.i) != scaled(id, d) || multiply(s.j, s.j) != scaled(id, t) ||
      multiply(s.i, s.j) != s.ij || add(multiply(s.i, s.j), multiply(s.j, s.i)) != zero2)
    throw std::logic_error("splitting matrices violate the quaternion relations");
  return s;
}

FieldElement linear_entry(const Quaternion& delta, const FieldElement& x, const FieldElement& y) {
  const auto& f = x.field();
  return embed(f, delta.a()) * y - embed(f, delta.b()) * x - embed(f, delta.c());
}

MoritaReduct morita_reduce(const SkewHermitianForm& h) {
  require_pure_diagonal(h);
  const auto f = conic_field(h.algebra());
  try {
    return {h, pairs(f, h.diagonal_entries(), symbol(f, "x"), symbol(f, "y"))};
  } catch (const MathError& e) {
    // 1, x, y are independent over K, so a vanishing entry means a zero quaternion.
    if (e.code() == Errc::DegenerateSpecialization) raise(Errc::ZeroEntry, e.what());
    throw;
  }
}

Matrix morita_gram(const SkewHermitianForm& h) {
  const auto s = splitting_matrices(h.algebra());
  const auto& f = s.field;
  const Matrix jmat = mat2(zero(f), one(f), -one(f), zero(f));
  const std::size_t n = h.rank();
  Matrix g(2 * n, std::vector<FieldElement>(2 * n, zero(f)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const auto block = multiply(jmat, s.image(h.gram()[k][l]));
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) g[2 * k + r][2 * l + c] = block[r][c];
    }
  return g;
}

MoritaReduct morita_reduce_general(const SkewHermitianForm& h) {
  const auto g = morita_gram(h);
  return {h, diagonalize(g.at(0).at(0).field(), g).form};
}

QuadraticForm split_reduce_at_point(const SkewHermitianForm& h, const ConicPoint& point) {
  require_pure_diagonal(h);
  const auto& q = h.algebra();
  const auto& f = q.base();
  const auto x = embed(f, point.x), y = embed(f, point.y);
  if (!(q.d() * x * x + q.t() * y * y).is_one())
    raise(Errc::NotOnConic, "(" + x.to_string() + ", " + y.to_string() + ") is not on the conic of " + q.to_string());
  return pairs(f, h.diagonal_entries(), x, y);
}

std::vector<ConicPoint> conic_points(const QuaternionAlgebra& q, const SearchBudget& budget, std::size_t limit,
                                     const std::vector<ConicPoint>& seeds) {
  const auto& f = q.base();
  std::vector<ConicPoint> out;
  std::set<std::string> seen;
  auto push = [&](const FieldElement& x, const FieldElement& y) {
    if (out.size() >= limit) return;
    if (seen.insert(x.to_string() + "," + y.to_string()).second) out.push_back({x, y});
  };
  for (const auto& p : seeds) {
    const auto x = embed(f, p.x), y = embed(f, p.y);
    if ((q.d() * x * x + q.t() * y * y).is_one()) push(x, y);
  }
  const auto pool = small_elements(f, budget.height, budget.poly_degree);
  for (const auto& x : pool) {
    if (out.size() >= limit) break;
    const auto r = (one(f) - q.d() * x * x) / q.t();
    if (auto y = sqrt(r)) {
      push(x, *y);
      push(x, -*y);
    }
  }
  // Line through (x0, y0) with slope m meets the conic again at parameter u.
  const auto two = from_integer(f, 2L);
  for (std::size_t base = 0; base < out.size() && out.size() < limit; ++base) {
    const auto p = out[base];
    for (const auto& m : pool) {
      const auto den = q.d() + q.t() * m * m;
      if (den.is_zero()) continue;
      const auto u = -(two * (q.d() * p.x + q.t() * p.y * m)) / den;
      push(p.x + u, p.y + m * u);
      if (out.size() >= limit) break;
    }
  }
  return out;
}

ExtendedValuation extend_valuation(const ValuationPtr& v, const QuaternionAlgebra& q) {
  const auto ram = ramification(q, *v);
  if (ram.status != RamificationStatus::Unramified)
    raise(Errc::RamifiedAlgebra, q.to_string() + " ramifies at " + v->describe());
  const auto& rep = *ram.unit_rep;
  const auto& k = q.base();
  const auto xfield = Field::function(k, "x");
  const auto conic = Field::conic(k, rep.d(), rep.t(), xfield);
  auto hint = ResidueConic::Unknown;
  if (ram.split_over_residue) hint = *ram.split_over_residue ? ResidueConic::Split : ResidueConic::Nonsplit;
  auto vt = Valuation::conic_half_norm(Valuation::gauss(v, xfield), conic, hint);
  return {std::move(vt), rep, ram.to_unit_rep};
}

}  // namespace morita
