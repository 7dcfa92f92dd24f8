#include "jet_fixtures.hpp"
#include "random_inputs.hpp"

#include "odeinv/invariants.hpp"
#include "odeinv/isotropy.hpp"
#include "odeinv/transform.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>

using namespace odeinv;
using odeinv::testing::Rng;

namespace {

// Jet of order k whose 3-jet has F3 != 0.
RSectionJet generic(std::uint64_t seed, int k) {
  Rng rng(seed);
  for (;;) {
    RSectionJet s = rng.section(std::max(k, 3));
    if (eval(invariant_polys().F3, s.truncated(3)) != 0)
      return s.truncated(k);
  }
}

void BM_BuildF3(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(build_F3());
}
BENCHMARK(BM_BuildF3)->Unit(benchmark::kMillisecond);

void BM_EvalF3(benchmark::State &state) {
  RSectionJet s = generic(1, 3);
  const auto &p = invariant_polys();
  for (auto _ : state)
    benchmark::DoNotOptimize(eval(p.F3, s));
}
BENCHMARK(BM_EvalF3);

void BM_IsotropyAlgebra(benchmark::State &state) {
  RSectionJet s = generic(2, 3);
  int k = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(isotropy_algebra(s, k).dim());
}
BENCHMARK(BM_IsotropyAlgebra)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_Omega3Closed(benchmark::State &state) {
  RSectionJet s = generic(3, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(omega3(s));
}
BENCHMARK(BM_Omega3Closed)->Unit(benchmark::kMicrosecond);

void BM_Omega3Construction(benchmark::State &state) {
  RSectionJet s = generic(3, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(omega3_construction(s, 0, 0));
}
BENCHMARK(BM_Omega3Construction)->Unit(benchmark::kMicrosecond);

void BM_ScalarInvariants(benchmark::State &state) {
  RSectionJet s = generic(4, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(scalar_invariants(s));
}
BENCHMARK(BM_ScalarInvariants)->Unit(benchmark::kMillisecond);

void BM_LieDerivatives(benchmark::State &state) {
  RSectionJet s = generic(5, 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(lie_derivatives(s));
}
BENCHMARK(BM_LieDerivatives)->Unit(benchmark::kMillisecond);

void BM_LiftSectionJet(benchmark::State &state) {
  int k = static_cast<int>(state.range(0));
  RSectionJet s = generic(6, k);
  Rng rng(7);
  MapExprs m = rng.point_map(3, s.base(1), s.base(2));
  MapJet f = map_jet(m.f1, m.f2, s.base(1), s.base(2), k + 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(lift_section_jet(f, s));
}
BENCHMARK(BM_LiftSectionJet)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
