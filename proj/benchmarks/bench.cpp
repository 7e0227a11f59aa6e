#include <benchmark/benchmark.h>

#include "subshift/bratteli.hpp"
#include "subshift/branchpoints.hpp"
#include "subshift/words.hpp"

namespace {

using namespace subshift;

Substitution sample(const char* name) {
  return load_substitution(std::string(SUBSHIFT_SAMPLES_DIR) + "/" + name);
}

void BM_Iterate(benchmark::State& state) {
  Substitution tau = sample("ex10.sub");
  for (auto _ : state)
    benchmark::DoNotOptimize(tau.iterate_letter(Letter(0), static_cast<int>(state.range(0)), 10'000'000));
}
BENCHMARK(BM_Iterate)->Arg(6)->Arg(10)->Arg(13);

void BM_LanguageTable(benchmark::State& state) {
  Substitution tau = sample("ex15.sub");
  LimitWord u = generating_fixed_point(tau);
  for (auto _ : state) benchmark::DoNotOptimize(language(tau, u, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LanguageTable)->Arg(4)->Arg(8)->Arg(12);

void BM_BranchPoints(benchmark::State& state) {
  Substitution tau = sample("ex11.sub");
  for (auto _ : state) benchmark::DoNotOptimize(branch_points(tau));
}
BENCHMARK(BM_BranchPoints);

void BM_SuccessorOrbit(benchmark::State& state) {
  Substitution tau = sample("abb_ab.sub");
  OrderedBratteli b = from_substitution(tau, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    PathTruncation p = minimal_truncation(b, static_cast<int>(state.range(0)), 0);
    std::uint64_t n = 0;
    while (auto next = successor(b, p)) {
      p = *next;
      ++n;
    }
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_SuccessorOrbit)->Arg(6)->Arg(9);

void BM_ConjugacyReplay(benchmark::State& state) {
  Substitution tau = sample("abb_ab.sub");
  OrderedBratteli b = from_substitution(tau, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(conjugacy_check(tau, b, 5, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ConjugacyReplay)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
