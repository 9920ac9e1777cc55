#include "morita/quadratic_form.hpp"

#include <algorithm>
#include <optional>

#include "morita/faults.hpp"

namespace morita {

QuadraticForm::QuadraticForm(FieldPtr base, std::vector<FieldElement> entries)
    : base_(std::move(base)), entries_(std::move(entries)) {
  for (auto& e : entries_) {
    e = embed(base_, e);
    if (e.is_zero()) raise(Errc::ZeroEntry, "quadratic form entries must be nonzero");
  }
}

FieldElement QuadraticForm::discriminant() const {
  auto d = one(base_);
  for (const auto& e : entries_) d *= e;
  return d;
}

QuadraticForm QuadraticForm::operator-() const { return scaled(from_integer(base_, -1L)); }

QuadraticForm QuadraticForm::scaled(const FieldElement& lambda) const {
  if (lambda.is_zero()) raise(Errc::ZeroScalar, "cannot scale a form by zero");
  const auto l = embed(base_, lambda);
  std::vector<FieldElement> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e * l);
  return QuadraticForm(base_, std::move(out));
}

QuadraticForm operator+(const QuadraticForm& a, const QuadraticForm& b) {
  require_same_field(a.base_, b.base_, "orthogonal sum");
  auto out = a.entries_;
  out.insert(out.end(), b.entries_.begin(), b.entries_.end());
  return QuadraticForm(a.base_, std::move(out));
}

bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
  if (!same_field(a.base_, b.base_) || a.rank() != b.rank()) return false;
  for (std::size_t k = 0; k < a.rank(); ++k)
    if (!(a.entries_[k] == b.entries_[k])) return false;
  return true;
}

std::string QuadraticForm::to_string() const {
  std::string out = "<";
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (k) out += ", ";
    out += entries_[k].to_string();
  }
  return out + ">";
}

// ---------------------------------------------------------------- matrices

Matrix identity_matrix(const FieldPtr& f, std::size_t n) {
  Matrix m(n, std::vector<FieldElement>(n, zero(f)));
  for (std::size_t k = 0; k < n; ++k) m[k][k] = one(f);
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return m;
  Matrix t(m[0].size(), std::vector<FieldElement>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) raise(Errc::DimensionMismatch, "matrix product shapes differ");
  const auto& f = a[0][0].field();
  Matrix out(a.size(), std::vector<FieldElement>(b[0].size(), zero(f)));
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[r][k].is_zero()) continue;
      for (std::size_t c = 0; c < b[0].size(); ++c)
        if (!b[k][c].is_zero()) out[r][c] += a[r][k] * b[k][c];
    }
  return out;
}

FieldElement determinant(const FieldPtr& f, Matrix m) {
  const auto n = m.size();
  auto det = one(f);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) return zero(f);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const auto inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const auto k = m[r][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[r][j] -= k * m[c][j];
    }
  }
  return det;
}

Matrix inverse(const FieldPtr& f, Matrix m) {
  const auto n = m.size();
  Matrix inv = identity_matrix(f, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c].is_zero()) ++piv;
    if (piv == n) raise(Errc::Degenerate, "matrix is singular");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const auto s = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      const auto k = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= k * m[c][j];
        inv[r][j] -= k * inv[c][j];
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------- diagonalize

Diagonalization diagonalize(const FieldPtr& base, const Matrix& gram) {
  const auto n = gram.size();
  Matrix g(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (gram[r].size() != n) raise(Errc::DimensionMismatch, "Gram matrix must be square");
    for (std::size_t c = 0; c < n; ++c) g[r].push_back(embed(base, gram[r][c]));
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c)
      if (!(g[r][c] == g[c][r])) raise(Errc::InvalidDescriptor, "Gram matrix is not symmetric");

  Matrix p = identity_matrix(base, n);
  // Basis change e_a <- e_a + s e_b applied to both g (congruence) and p.
  auto add_to = [&](std::size_t a, std::size_t b, const FieldElement& s) {
    for (std::size_t c = 0; c < n; ++c) g[a][c] += s * g[b][c];
    for (std::size_t r = 0; r < n; ++r) g[r][a] += s * g[r][b];
    for (std::size_t r = 0; r < n; ++r) p[r][a] += s * p[r][b];
  };
  auto swap_basis = [&](std::size_t a, std::size_t b) {
    std::swap(g[a], g[b]);
    for (auto& row : g) std::swap(row[a], row[b]);
    for (auto& row : p) std::swap(row[a], row[b]);
  };

  std::vector<FieldElement> diag;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && g[piv][piv].is_zero()) ++piv;
    if (piv == n) {
      // No nonzero diagonal left: e_a + e_b has value 2 g[a][b] != 0.
      std::optional<std::pair<std::size_t, std::size_t>> hit;
      for (std::size_t a = k; a < n && !hit; ++a)
        for (std::size_t b = a + 1; b < n && !hit; ++b)
          if (!g[a][b].is_zero()) hit = {a, b};
      if (!hit) raise(Errc::Degenerate, "Gram matrix is singular");
      add_to(hit->first, hit->second, one(base));
      piv = hit->first;
    }
    if (piv != k) swap_basis(piv, k);
    const auto inv = g[k][k].inverse();
    for (std::size_t r = k + 1; r < n; ++r)
      if (!g[r][k].is_zero()) add_to(r, k, -(g[r][k] * inv));
    diag.push_back(g[k][k]);
  }
  return {QuadraticForm(base, std::move(diag)), std::move(p)};
}

// ---------------------------------------------------------------- residues

ResiduePair residue_forms(const QuadraticForm& q, const Valuation& v) {
  require_same_field(q.base(), v.domain(), "residue_forms");
  const bool skip = faults::skip_even_scaling.load(std::memory_order_relaxed);
  std::vector<FieldElement> first, second;
  for (const auto& e : q.entries()) {
    const auto k = v.value(e);
    const auto a = k >= 0 ? k / 2 : -((1 - k) / 2);  // floor(k / 2)
    const auto b = k - 2 * a;
    const auto u = skip ? e : e * v.uniformizer().pow(-2 * a);
    if (b == 0)
      first.push_back(v.residue(u));
    else
      second.push_back(v.residue(u / v.uniformizer()));
  }
  return {QuadraticForm(v.residue_field(), std::move(first)), QuadraticForm(v.residue_field(), std::move(second))};
}

// ---------------------------------------------------------------- Witt oracle

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

bool same_square_class(const FieldElement& a, const FieldElement& b) {
  if (a.is_zero() || b.is_zero()) return false;
  return is_square(a / b);
}

namespace {

using Vec = std::vector<FieldElement>;

// Drops pairs <a, b> with -b/a a square; each is a hyperbolic plane.
void cancel_pairs(Vec& e) {
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < e.size() && !again; ++i)
      for (std::size_t j = i + 1; j < e.size() && !again; ++j)
        if (is_square(-e[j] / e[i])) {
          e.erase(e.begin() + static_cast<std::ptrdiff_t>(j));
          e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
          again = true;
        }
  }
}

// Exhaustive projective search on the first three coordinates; every
// ternary form over F_p has a nontrivial zero.
std::optional<Vec> isotropic_finite(const Vec& e) {
  const auto& f = e[0].field();
  const auto p = f->characteristic();
  const std::size_t k = std::min<std::size_t>(3, e.size());
  std::vector<std::int64_t> x(k);
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t free = k - lead - 1;
    std::int64_t total = 1;
    for (std::size_t r = 0; r < free; ++r) total *= p;
    for (std::int64_t code = 0; code < total; ++code) {
      std::fill(x.begin(), x.end(), 0);
      x[lead] = 1;
      auto c = code;
      for (std::size_t r = lead + 1; r < k; ++r, c /= p) x[r] = c % p;
      auto s = zero(f);
      for (std::size_t r = 0; r < k; ++r)
        if (x[r]) s += e[r] * from_integer(f, static_cast<long>(x[r] * x[r]));
      if (s.is_zero()) {
        Vec out(e.size(), zero(f));
        for (std::size_t r = 0; r < k; ++r) out[r] = from_integer(f, static_cast<long>(x[r]));
        return out;
      }
    }
  }
  return std::nullopt;
}

// Bounded search: leading coordinate 1, middle coordinates from a pool of
// small elements, last coordinate by square root.
std::optional<Vec> isotropic_bounded(const Vec& e, const SearchBudget& budget) {
  const auto& f = e[0].field();
  const auto pool = small_elements(f, budget.height, budget.poly_degree);
  std::int64_t spent = 0;
  const std::size_t n = e.size();
  for (std::size_t size = 3; size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t r = 0; r < size; ++r) idx[r] = r;
    for (;;) {
      std::vector<std::size_t> digit(size - 2, 0);
      for (;;) {
        if (++spent > budget.max_vectors) return std::nullopt;
        auto s = e[idx[0]];
        for (std::size_t r = 0; r + 2 < size; ++r) {
          const auto& c = pool[digit[r]];
          if (!c.is_zero()) s += e[idx[r + 1]] * c * c;
        }
        const auto& last = e[idx[size - 1]];
        if (auto root = sqrt(-s / last)) {
          Vec out(n, zero(f));
          out[idx[0]] = one(f);
          for (std::size_t r = 0; r + 2 < size; ++r) out[idx[r + 1]] = pool[digit[r]];
          out[idx[size - 1]] = *root;
          return out;
        }
        std::size_t r = 0;
        while (r < digit.size() && ++digit[r] == pool.size()) digit[r++] = 0;
        if (r == digit.size()) break;
      }
      // Next combination of coordinates.
      std::size_t r = size;
      while (r > 0 && idx[r - 1] == n - size + r - 1) --r;
      if (r == 0) break;
      ++idx[r - 1];
      for (std::size_t j = r; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

// Given isotropic v for <e>, returns the diagonal of the complement of a
// hyperbolic plane through v.
Vec split_hyperbolic(const Vec& e, const Vec& v) {
  const auto& f = e[0].field();
  const std::size_t n = e.size();
  // {v, e_k} and e_l for l outside {k, j} form a basis when v_k, v_j != 0.
  std::size_t k = 0;
  while (v[k].is_zero()) ++k;
  std::size_t j = k + 1;
  while (v[j].is_zero()) ++j;
  const auto beta = e[k] * v[k];  // B(v, e_k)
  const auto gamma = e[k];        // B(e_k, e_k)
  std::vector<Vec> rest;
  for (std::size_t l = 0; l < n; ++l) {
    if (l == k || l == j) continue;
    const auto r0 = e[l] * v[l];  // B(e_l, v); B(e_l, e_k) = 0
    const auto a1 = r0 / beta;
    const auto a0 = -(gamma * a1) / beta;
    Vec u(n, zero(f));
    u[l] = one(f);
    for (std::size_t i = 0; i < n; ++i) u[i] -= a0 * v[i];
    u[k] -= a1;
    rest.push_back(std::move(u));
  }
  Matrix g(rest.size(), Vec(rest.size(), zero(f)));
  for (std::size_t a = 0; a < rest.size(); ++a)
    for (std::size_t b = a; b < rest.size(); ++b) {
      auto s = zero(f);
      for (std::size_t i = 0; i < n; ++i)
        if (!rest[a][i].is_zero() && !rest[b][i].is_zero()) s += e[i] * rest[a][i] * rest[b][i];
      g[a][b] = s;
      g[b][a] = s;
    }
  return diagonalize(f, g).form.entries();
}

}  // namespace

Verdict witt_trivial(const QuadraticForm& q, const SearchBudget& budget) {
  Vec e = q.entries();
  const bool finite = q.base()->kind() == FieldKind::FiniteField;
  for (;;) {
    if (e.size() % 2 == 1) return Verdict::False;
    cancel_pairs(e);
    if (e.empty()) return Verdict::True;
    // Rank 2 survived cancellation: -disc is a nonsquare, so anisotropic.
    if (e.size() == 2) return Verdict::False;
    auto v = finite ? isotropic_finite(e) : isotropic_bounded(e, budget);
    if (!v) return finite ? Verdict::False : Verdict::Indeterminate;
    e = split_hyperbolic(e, *v);
  }
}

Verdict witt_equal(const QuadraticForm& a, const QuadraticForm& b, const SearchBudget& budget) {
  return witt_trivial(a + (-b), budget);
}

Verdict is_unramified(const QuadraticForm& q, const Valuation& v, const SearchBudget& budget) {
  return witt_trivial(residue_forms(q, v).second, budget);
}

}  // namespace morita
