#include "morita/skew_hermitian.hpp"

#include <algorithm>
#include <cstdlib>

namespace morita {

namespace {

QuaternionMatrix conj_transpose(const QuaternionMatrix& m) {
  QuaternionMatrix r;
  if (m.empty()) return r;
  for (std::size_t l = 0; l < m[0].size(); ++l) {
    std::vector<Quaternion> row;
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(m[k][l].conj());
    r.push_back(std::move(row));
  }
  return r;
}

QuaternionMatrix product(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  const auto& q = a.at(0).at(0).algebra();
  if (a[0].size() != b.size()) raise(Errc::DimensionMismatch, "matrix product shapes");
  QuaternionMatrix r(a.size(), std::vector<Quaternion>(b[0].size(), Quaternion::zero(q)));
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t m = 0; m < b.size(); ++m) {
      if (a[k][m].is_zero()) continue;
      for (std::size_t l = 0; l < b[0].size(); ++l) r[k][l] = r[k][l] + a[k][m] * b[m][l];
    }
  return r;
}

// Block matrix of left multiplications; invertible iff h is nondegenerate.
Matrix left_regular_blocks(const QuaternionAlgebra& q, const QuaternionMatrix& g) {
  const std::size_t n = g.size();
  Matrix m(4 * n, std::vector<FieldElement>(4 * n, zero(q.base())));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      const auto block = left_regular(g[k][l]);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m[4 * k + r][4 * l + c] = block[r][c];
    }
  return m;
}

}  // namespace

SkewHermitianForm::SkewHermitianForm(QuaternionAlgebra algebra, QuaternionMatrix gram)
    : algebra_(std::move(algebra)), gram_(std::move(gram)) {
  const std::size_t n = gram_.size();
  if (n == 0) raise(Errc::DimensionMismatch, "empty Gram matrix");
  for (const auto& row : gram_) {
    if (row.size() != n) raise(Errc::DimensionMismatch, "Gram matrix is not square");
    for (const auto& e : row)
      if (!(e.algebra() == algebra_)) raise(Errc::AlgebraMismatch, "entry over " + e.algebra().to_string());
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k; l < n; ++l)
      if (!(gram_[l][k].conj() == -gram_[k][l]))
        raise(Errc::InvalidDescriptor, "Gram matrix is not skew-hermitian at (" + std::to_string(k) + ", " +
                                           std::to_string(l) + ")");
  if (determinant(algebra_.base(), left_regular_blocks(algebra_, gram_)).is_zero())
    raise(Errc::Degenerate, "skew-hermitian form is degenerate");
}

SkewHermitianForm SkewHermitianForm::diagonal(const QuaternionAlgebra& algebra, const std::vector<Quaternion>& entries) {
  QuaternionMatrix g(entries.size(), std::vector<Quaternion>(entries.size(), Quaternion::zero(algebra)));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].is_zero()) raise(Errc::ZeroEntry, "diagonal entry " + std::to_string(k) + " is zero");
    g[k][k] = entries[k];
  }
  return SkewHermitianForm(algebra, std::move(g));
}

bool SkewHermitianForm::is_diagonal() const {
  for (std::size_t k = 0; k < rank(); ++k)
    for (std::size_t l = 0; l < rank(); ++l)
      if (k != l && !gram_[k][l].is_zero()) return false;
  return true;
}

std::vector<Quaternion> SkewHermitianForm::diagonal_entries() const {
  std::vector<Quaternion> r;
  for (std::size_t k = 0; k < rank(); ++k) r.push_back(gram_[k][k]);
  return r;
}

bool operator==(const SkewHermitianForm& a, const SkewHermitianForm& b) {
  return a.algebra_ == b.algebra_ && a.gram_ == b.gram_;
}

std::string SkewHermitianForm::to_string() const {
  std::string s;
  if (is_diagonal()) {
    for (const auto& e : diagonal_entries()) s += (s.empty() ? "" : ", ") + e.to_string();
    return "<" + s + ">";
  }
  for (const auto& row : gram_) {
    std::string r;
    for (const auto& e : row) r += (r.empty() ? "" : ", ") + e.to_string();
    s += (s.empty() ? "[" : ", [") + r + "]";
  }
  return "[" + s + "]";
}

Quaternion evaluate(const SkewHermitianForm& h, const std::vector<Quaternion>& x, const std::vector<Quaternion>& y) {
  if (x.size() != h.rank() || y.size() != h.rank()) raise(Errc::DimensionMismatch, "vector length differs from rank");
  auto sum = Quaternion::zero(h.algebra());
  for (std::size_t k = 0; k < h.rank(); ++k)
    for (std::size_t l = 0; l < h.rank(); ++l) sum = sum + x[k].conj() * h.gram()[k][l] * y[l];
  return sum;
}

QuaternionMatrix congruence(const QuaternionMatrix& p, const QuaternionMatrix& g) {
  return product(product(conj_transpose(p), g), p);
}

QuaternionMatrix identity_matrix(const QuaternionAlgebra& q, std::size_t n) {
  QuaternionMatrix m(n, std::vector<Quaternion>(n, Quaternion::zero(q)));
  for (std::size_t k = 0; k < n; ++k) m[k][k] = Quaternion::scalar(q, one(q.base()));
  return m;
}

HermitianDiagonalization diagonalize_h(const SkewHermitianForm& h) {
  const auto& q = h.algebra();
  const std::size_t n = h.rank();
  auto g = h.gram();
  auto basis = identity_matrix(q, n);

  // Right-multiplies by the elementary matrix E and updates g = conj(E)^T g E.
  auto apply = [&](const QuaternionMatrix& e) {
    g = congruence(e, g);
    basis = product(basis, e);
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && g[pivot][pivot].is_zero()) ++pivot;
    if (pivot == n) {
      // Every remaining diagonal entry vanishes: e_k <- e_k + e_l mu makes
      // the diagonal 2 * pure(u mu), nonzero for mu = 1 or i.
      std::optional<std::size_t> partner;
      for (std::size_t l = k + 1; l < n && !partner; ++l)
        if (!g[k][l].is_zero()) partner = l;
      for (std::size_t r = k + 1; r < n && !partner; ++r)
        for (std::size_t l = r + 1; l < n && !partner; ++l)
          if (!g[r][l].is_zero()) {
            auto e = identity_matrix(q, n);
            std::swap(e[k], e[r]);
            apply(e);
            partner = l;
          }
      if (!partner) raise(Errc::Degenerate, "skew-hermitian form is degenerate");
      for (const auto& mu : {Quaternion::scalar(q, one(q.base())), Quaternion::i(q), Quaternion::j(q),
                             Quaternion::ij(q)}) {
        auto e = identity_matrix(q, n);
        e[*partner][k] = mu;
        if (!congruence(e, g)[k][k].is_zero()) {
          apply(e);
          break;
        }
      }
      pivot = k;
    } else if (pivot != k) {
      auto e = identity_matrix(q, n);
      std::swap(e[k], e[pivot]);
      apply(e);
    }
    const auto inv = g[k][k].inverse();
    auto e = identity_matrix(q, n);
    bool changed = false;
    for (std::size_t l = k + 1; l < n; ++l) {
      if (g[k][l].is_zero()) continue;
      e[k][l] = -(inv * g[k][l]);
      changed = true;
    }
    if (changed) apply(e);
  }

  HermitianDiagonalization out;
  for (std::size_t k = 0; k < n; ++k) out.diagonal.push_back(g[k][k]);
  out.basis = std::move(basis);
  return out;
}

SkewHermitianForm scale(const FieldElement& lambda, const SkewHermitianForm& h) {
  if (lambda.is_zero()) raise(Errc::ZeroScalar, "scaling by zero");
  auto g = h.gram();
  for (auto& row : g)
    for (auto& e : row) e = e.scaled(lambda);
  return SkewHermitianForm(h.algebra(), std::move(g));
}

std::string_view to_string(CertificateVerdict v) noexcept {
  return v == CertificateVerdict::Certified ? "Certified" : "NoCertificate";
}

GoodReductionCertificate good_reduction_certificate(const SkewHermitianForm& h, const Valuation& v) {
  const auto ram = ramification(h.algebra(), v);
  if (ram.status != RamificationStatus::Unramified)
    raise(Errc::RamifiedAlgebra, h.algebra().to_string() + " ramifies at " + v.describe());

  GoodReductionCertificate cert;
  const auto diag = h.is_diagonal() ? h.diagonal_entries() : diagonalize_h(h).diagonal;
  std::int64_t maxval = 0;
  for (const auto& d : diag) {
    cert.values.push_back(extval(d, v));
    maxval = std::max(maxval, (std::abs(cert.values.back().doubled()) + 1) / 2);
  }

  std::optional<std::int64_t> twist;
  for (std::int64_t m = -maxval; m <= maxval && !twist; ++m) {
    const bool zeroed = std::all_of(cert.values.begin(), cert.values.end(),
                                    [&](HalfInteger e) { return e + HalfInteger::from_integer(m) == HalfInteger(); });
    if (zeroed) twist = m;
  }
  if (!twist) {
    cert.note = "no central power of the uniformizer makes every diagonal value zero";
    return cert;
  }
  if (!ram.to_unit_rep) {
    cert.note = "no isomorphism over the base onto a unit presentation of the algebra";
    return cert;
  }

  const auto lambda = v.uniformizer().pow(*twist);
  std::vector<Quaternion> scaled;
  for (const auto& d : diag) {
    scaled.push_back(d.scaled(lambda));
    const auto image = ram.to_unit_rep->apply(scaled.back());
    for (const auto& c : image.coords())
      if (!c.is_zero() && v.value(c) < 0) {
        cert.note = "unit diagonal is not integral in the unit presentation " + ram.unit_rep->to_string();
        return cert;
      }
  }
  cert.verdict = CertificateVerdict::Certified;
  cert.diagonal = std::move(scaled);
  cert.scaling = twist;
  return cert;
}

}  // namespace morita
