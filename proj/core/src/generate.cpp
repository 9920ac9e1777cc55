#include "morita/generate.hpp"

#include <limits>

namespace morita {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(engine_());
  const auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

namespace {

constexpr int kMaxAttempts = 10000;

QuaternionAlgebra random_split_algebra(const ValuationPtr& v, const GeneratorSpec& spec, Rng& rng,
                                       std::vector<ConicPoint>& seeds) {
  const auto& f = v->domain();
  if (f->kind() != FieldKind::Rationals) raise(Errc::Unsupported, "random split algebras are generated over Q");
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const auto d = from_integer(f, static_cast<long>(rng.uniform(spec.coeff_min, spec.coeff_max)));
    if (!v->is_unit(d)) continue;
    const auto w = from_integer(f, static_cast<long>(rng.uniform(1, 9)));
    const auto x = from_integer(f, static_cast<long>(rng.uniform(-9, 9))) / w;
    const auto y = from_integer(f, static_cast<long>(rng.uniform(1, 9))) / w;
    const auto t = (one(f) - d * x * x) / (y * y);
    if (!v->is_unit(t)) continue;
    seeds.push_back({x, y});
    return QuaternionAlgebra(f, d, t);
  }
  raise(Errc::Unsupported, "no split algebra with unit slots found");
}

}  // namespace

Instance generate_instance(const std::optional<QuaternionAlgebra>& fixed, const ValuationPtr& v,
                           const GeneratorSpec& spec, std::uint64_t seed, std::uint64_t index) {
  if (spec.n == 0) raise(Errc::InvalidDescriptor, "generator rank must be positive");
  if (spec.coeff_min > spec.coeff_max) raise(Errc::InvalidDescriptor, "empty coefficient range");
  Rng rng(seed, index);
  std::vector<ConicPoint> seeds;
  if (spec.algebra == AlgebraMode::Fixed && !fixed) raise(Errc::InvalidDescriptor, "generator needs an algebra");
  const QuaternionAlgebra q =
      spec.algebra == AlgebraMode::RandomSplit ? random_split_algebra(v, spec, rng, seeds) : *fixed;
  const auto& f = q.base();

  const auto ram = ramification(q, *v);
  if (ram.status != RamificationStatus::Unramified || !ram.to_unit_rep)
    raise(Errc::RamifiedAlgebra, q.to_string() + " has no unit presentation over " + f->describe());
  const auto& rep = *ram.unit_rep;
  const auto from_rep = ram.to_unit_rep->inverse();

  // Present the same algebra as (d pi^2a, t pi^2b) when asked.
  const auto pi = embed(f, v->uniformizer());
  const auto a = spec.presentation > 0 ? rng.uniform(0, spec.presentation) : 0;
  const auto b = spec.presentation > 0 ? rng.uniform(0, spec.presentation) : 0;
  QuaternionAlgebra shown(f, q.d() * pi.pow(2 * a), q.t() * pi.pow(2 * b));
  const auto to_shown =
      AlgebraIsomorphism(shown, Quaternion::i(q).scaled(pi.pow(a)), Quaternion::j(q).scaled(pi.pow(b))).inverse();
  for (auto& p : seeds) p = {p.x * pi.pow(-a), p.y * pi.pow(-b)};

  const auto k = spec.twist > 0 ? rng.uniform(-spec.twist, spec.twist) : 0;
  const auto lambda = pi.pow(k);

  const auto rank = spec.n_max > spec.n
                        ? static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(spec.n),
                                                               static_cast<std::int64_t>(spec.n_max)))
                        : spec.n;
  std::vector<Quaternion> diag;
  for (std::size_t l = 0; l < rank; ++l) {
    std::optional<Quaternion> delta;
    for (int attempt = 0; attempt < kMaxAttempts && !delta; ++attempt) {
      FieldElement c[3];
      bool has_unit = false;
      for (auto& e : c) {
        e = from_integer(f, static_cast<long>(rng.uniform(spec.coeff_min, spec.coeff_max)));
        has_unit = has_unit || v->is_unit(e);
      }
      if (!has_unit) continue;
      auto u = Quaternion::pure(rep, c[0], c[1], c[2]);
      if (!v->is_unit(u.nrd())) continue;
      delta = u;
    }
    if (!delta) raise(Errc::Unsupported, "no unit-norm coefficient triple in the coefficient range");
    diag.push_back(to_shown.apply(from_rep.apply(*delta)).scaled(lambda));
  }
  return {SkewHermitianForm::diagonal(shown, diag), std::move(seeds)};
}

}  // namespace morita
