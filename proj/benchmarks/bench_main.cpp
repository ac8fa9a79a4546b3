#include <benchmark/benchmark.h>

#include "hamlie/bilinear.hpp"
#include "hamlie/hamiltonian.hpp"
#include "hamlie/lie_structure.hpp"

using namespace hamlie;

namespace {

AlgebraSpec spec(std::vector<int> h, int tag) { return AlgebraSpec{Heights(std::move(h)), tag, std::nullopt, 1, Variant::P}; }

const std::vector<std::pair<std::vector<int>, int>> kSizes = {{{1, 1, 1}, 4}, {{2, 1, 1}, 4}, {{2, 2, 1}, 4},
                                                              {{3, 2, 1}, 4}};

void BM_Build(benchmark::State& st) {
  const auto& [h, tag] = kSizes[st.range(0)];
  for (auto _ : st) benchmark::DoNotOptimize(build_algebra(spec(h, tag)));
  st.SetLabel("dim " + std::to_string((1 << (h[0] + h[1] + h[2])) - 1));
}
BENCHMARK(BM_Build)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Jacobi(benchmark::State& st) {
  const auto& [h, tag] = kSizes[st.range(0)];
  const LieAlg l = build_algebra(spec(h, tag));
  for (auto _ : st) benchmark::DoNotOptimize(check_jacobi(l));
}
BENCHMARK(BM_Jacobi)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Norton(benchmark::State& st) {
  const auto& [h, tag] = kSizes[st.range(0)];
  const LieAlg l = build_algebra(spec(h, tag));
  for (auto _ : st) benchmark::DoNotOptimize(is_simple_norton(l, 1));
}
BENCHMARK(BM_Norton)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_MinRankExhaustive(benchmark::State& st) {
  const LieAlg l = build_algebra(spec({2, 1, 1}, 3));
  for (auto _ : st) benchmark::DoNotOptimize(min_ad_rank(l, RankMode::exhaustive));
}
BENCHMARK(BM_MinRankExhaustive)->Unit(benchmark::kMillisecond);

void BM_MinRankHomogeneous(benchmark::State& st) {
  const LieAlg l = build_algebra(spec({2, 2, 1}, 4));
  for (auto _ : st) benchmark::DoNotOptimize(min_ad_rank(l, RankMode::homogeneous));
}
BENCHMARK(BM_MinRankHomogeneous)->Unit(benchmark::kMillisecond);

void BM_Canonicalize(benchmark::State& st) {
  const Field f(1);
  const auto forms = all_nonalternating_forms(f);
  const Heights h({1, 2, 3});
  for (auto _ : st)
    for (const Matrix& b : forms) benchmark::DoNotOptimize(canonicalize(BilinPair{h, b}));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(forms.size()));
}
BENCHMARK(BM_Canonicalize);

}  // namespace

BENCHMARK_MAIN();
