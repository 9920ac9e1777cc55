#include <benchmark/benchmark.h>

#include "morita/batch.hpp"

using namespace morita;

namespace {

FieldPtr qs() { return Field::function(Field::rationals(), "s"); }

QuaternionAlgebra division_algebra() {
  const auto f = qs();
  return QuaternionAlgebra(f, from_integer(f, -1L), symbol(f, "s"));
}

void BM_RationalFunctionArithmetic(benchmark::State& state) {
  const auto f = qs();
  const auto a = parse_element(f, "(s^2 + 3)/(s - 1)");
  const auto b = parse_element(f, "(2*s + 5)/(s^2 + 1)");
  for (auto _ : state) benchmark::DoNotOptimize((a * b + a) / b);
}
BENCHMARK(BM_RationalFunctionArithmetic);

void BM_ConicValuation(benchmark::State& state) {
  const auto q = division_algebra();
  const auto ext = extend_valuation(Valuation::gauss(Valuation::padic(3), q.base()), q);
  const auto& k = ext.valuation->domain();
  const auto e = parse_element(k, "3*y + x + 6");
  for (auto _ : state) benchmark::DoNotOptimize(ext.valuation->value(e));
}
BENCHMARK(BM_ConicValuation);

void BM_Ramification(benchmark::State& state) {
  const auto f = Field::rationals();
  const QuaternionAlgebra q(f, parse_element(f, "18"), parse_element(f, "9/7"));
  const auto v = Valuation::padic(3);
  for (auto _ : state) benchmark::DoNotOptimize(ramification(q, *v));
}
BENCHMARK(BM_Ramification);

void BM_MoritaReduce(benchmark::State& state) {
  const auto q = division_algebra();
  std::vector<Quaternion> diag;
  for (int l = 0; l < state.range(0); ++l) diag.push_back(l % 2 ? Quaternion::j(q) : Quaternion::i(q));
  const auto h = SkewHermitianForm::diagonal(q, diag);
  for (auto _ : state) benchmark::DoNotOptimize(morita_reduce(h));
}
BENCHMARK(BM_MoritaReduce)->Arg(1)->Arg(3)->Arg(6);

void BM_WittTrivialFiniteField(benchmark::State& state) {
  const auto f = Field::finite(7);
  std::vector<FieldElement> e;
  for (int k = 0; k < state.range(0); ++k) e.push_back(from_integer(f, 1 + k % 6));
  const QuadraticForm qf(f, e);
  for (auto _ : state) benchmark::DoNotOptimize(witt_trivial(qf));
}
BENCHMARK(BM_WittTrivialFiniteField)->Arg(2)->Arg(4);

void BM_TheoremCheckDivision(benchmark::State& state) {
  BatchConfig c;
  c.algebra = division_algebra();
  c.valuation = Valuation::gauss(Valuation::padic(3), qs());
  c.generator.n = static_cast<std::size_t>(state.range(0));
  c.seed = 42;
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_instance(c, index++));
}
BENCHMARK(BM_TheoremCheckDivision)->Arg(1)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_TheoremCheckSplit(benchmark::State& state) {
  BatchConfig c;
  c.valuation = Valuation::padic(5);
  c.generator.n = 2;
  c.generator.algebra = AlgebraMode::RandomSplit;
  c.seed = 42;
  std::uint64_t index = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_instance(c, index++));
}
BENCHMARK(BM_TheoremCheckSplit)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
