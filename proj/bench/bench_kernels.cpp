// Serial reference vs OpenMP for each parallel kernel. Arg 0 = serial, 1 = parallel.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sensilab/constructions/catalog.hpp"
#include "sensilab/core/lazy_function.hpp"
#include "sensilab/core/random.hpp"
#include "sensilab/parallel/kernels.hpp"
#include "sensilab/suites/suites.hpp"

using namespace sensilab;

namespace {

par::Exec exec_of(const benchmark::State& s) { return s.range(0) ? par::Exec::parallel : par::Exec::serial; }

std::vector<std::uint64_t> random_words(int arity, std::uint64_t seed) {
  auto rng = stream_rng(seed);
  std::vector<std::uint64_t> w(arity >= 6 ? std::size_t{1} << (arity - 6) : 1);
  for (auto& x : w) x = rng();
  if (arity < 6) w[0] &= (std::uint64_t{1} << (1u << arity)) - 1;
  return w;
}

void BM_xor_permute(benchmark::State& s) {
  const int arity = static_cast<int>(s.range(1));
  const auto in = random_words(arity, 1);
  std::vector<std::uint64_t> out(in.size());
  for (auto _ : s) {
    par::xor_permute(in, arity, 0x5a5a5 & ((std::uint64_t{1} << arity) - 1), out, exec_of(s));
    benchmark::DoNotOptimize(out.data());
  }
  s.SetBytesProcessed(static_cast<std::int64_t>(s.iterations() * in.size() * 8));
}
BENCHMARK(BM_xor_permute)->ArgsProduct({{0, 1}, {20, 24}});

void BM_zeta_or_subsets(benchmark::State& s) {
  const int arity = static_cast<int>(s.range(1));
  const auto base = random_words(arity, 2);
  for (auto _ : s) {
    s.PauseTiming();
    auto t = base;
    s.ResumeTiming();
    par::zeta_or_subsets(t, arity, exec_of(s));
    benchmark::DoNotOptimize(t.data());
  }
}
BENCHMARK(BM_zeta_or_subsets)->ArgsProduct({{0, 1}, {18, 22}});

void BM_compose_bits(benchmark::State& s) {
  const auto outer = constructions::named_function("maj3");
  const std::vector<std::uint32_t> inner = [] {
    std::vector<std::uint32_t> t(std::size_t{1} << 6);
    for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = static_cast<std::uint32_t>(__builtin_popcountll(x) & 1);
    return t;
  }();
  for (auto _ : s) {
    auto g = par::compose_bits(outer, inner, 6, 1, 3, exec_of(s));
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_compose_bits)->Arg(0)->Arg(1);

void BM_materialize_boolean(benchmark::State& s) {
  const auto f = LazyFunction::compose_copies(LazyFunction::dense(constructions::named_function("tight-family-k2")),
                                              LazyFunction::dense(constructions::named_function("and2-or2")));
  for (auto _ : s) {
    auto g = par::materialize_boolean(f, exec_of(s));
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_materialize_boolean)->Arg(0)->Arg(1);

void BM_suite_corpus(benchmark::State& s) {
  suites::SuiteParams p;
  p.n = 3;
  p.exhaustive = true;
  p.exec = exec_of(s);
  for (auto _ : s) {
    auto r = suites::run_suite("chain", p);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_suite_corpus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
