#include <benchmark/benchmark.h>

#include "codedloops/binary_code.hpp"
#include "codedloops/classify.hpp"
#include "codedloops/coded_loop.hpp"
#include "codedloops/cvs.hpp"
#include "codedloops/loop_analysis.hpp"

using namespace codedloops;

namespace {

void BM_BuildGolayLoop(benchmark::State& state) {
  const Cvs cvs = code_to_cvs(builtin_golay24());
  for (auto _ : state) benchmark::DoNotOptimize(build(cvs));
}
BENCHMARK(BM_BuildGolayLoop)->Unit(benchmark::kMillisecond);

void BM_CodedMultiply(benchmark::State& state) {
  const CodedLoop loop = build(random_cvs(2, static_cast<std::size_t>(state.range(0)), 1));
  std::uint64_t i = 0;
  const auto n = loop.order();
  for (auto _ : state) {
    benchmark::DoNotOptimize(loop.mul(loop.element_at(i % n), loop.element_at((i * 7 + 3) % n)));
    ++i;
  }
}
BENCHMARK(BM_CodedMultiply)->Arg(3)->Arg(8)->Arg(12);

void BM_ValidateAxioms(benchmark::State& state) {
  const Cvs cvs = random_cvs(2, static_cast<std::size_t>(state.range(0)), 2);
  ValidationOptions opts;
  opts.tuple_limit = std::uint64_t{1} << 20;
  for (auto _ : state) benchmark::DoNotOptimize(validate_axioms(cvs, opts));
}
BENCHMARK(BM_ValidateAxioms)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CodeToCvsRoundTrip(benchmark::State& state) {
  const Cvs cvs = random_cvs(2, 5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(code_to_cvs(cvs_to_code(cvs)));
}
BENCHMARK(BM_CodeToCvsRoundTrip)->Unit(benchmark::kMicrosecond);

void BM_IsoUpToScalar(benchmark::State& state) {
  const Cvs a = random_cvs(3, 4, 5);
  const Cvs b = adjoint_translate(a, FpVector::zero(4, 3));
  for (auto _ : state) benchmark::DoNotOptimize(iso_up_to_scalar(a, b));
}
BENCHMARK(BM_IsoUpToScalar)->Unit(benchmark::kMicrosecond);

void BM_MoufangTable(benchmark::State& state) {
  const LoopTable t = to_table(build(random_cvs(3, 4, 6)));
  for (auto _ : state) benchmark::DoNotOptimize(check_moufang(t));
}
BENCHMARK(BM_MoufangTable)->Unit(benchmark::kMillisecond);

void BM_TableIsomorphism(benchmark::State& state) {
  const CodedLoop loop = build(octonion_cvs());
  const LoopTable a = to_table(loop);
  const LoopTable b = to_table(kappa_isotope(loop, FpVector::uniform({1, 0, 1}, 2)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_isomorphic(a, b));
}
BENCHMARK(BM_TableIsomorphism)->Unit(benchmark::kMicrosecond);

void BM_ClassifyDim3(benchmark::State& state) {
  ClassifyOptions o;
  o.p = 3;
  o.dim = 3;
  o.exponent = 3;
  o.nonassociative = true;
  for (auto _ : state) benchmark::DoNotOptimize(classify_cvs(o));
}
BENCHMARK(BM_ClassifyDim3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
