#include <benchmark/benchmark.h>

#include "ncconvex/ncconvex.hpp"

using namespace ncconvex;

namespace {

void BM_EvalHermitian81(benchmark::State& state) {
  const NcPolynomial p = parse_polynomial("8*z1*z2 + 8*z2*z1 + z1^2 + z2^81", {0, 2});
  const Eigen::Index n = state.range(0);
  Rng rng(1);
  const HermTuple x(n, MatrixTuple{gaussian_hermitian(n, rng), random_hermitian_with_spectrum(n, -0.9, 0.9, rng)});
  const HermTuple a(n, LetterClass::A);
  for (auto _ : state) benchmark::DoNotOptimize(eval_poly(p, a, x));
}
BENCHMARK(BM_EvalHermitian81)->Arg(2)->Arg(8)->Arg(32);

void BM_ConvexityTrials(benchmark::State& state) {
  const NcFunction f = *nc_preset("mixed-ax");
  Rng rng(2);
  const HermTuple a = sample_ball_point(1, state.range(0), 1.0, rng, LetterClass::A);
  for (auto _ : state) benchmark::DoNotOptimize(test_convexity_at_A(f, a, 0.5, 100, 3).min_defect_eig);
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_ConvexityTrials)->Arg(2)->Arg(4)->Arg(8);

void BM_Extraction(benchmark::State& state) {
  const auto path = static_cast<ExtractionPath>(state.range(0));
  const NcFunction f = *nc_preset("kraus-halfmass");
  Rng rng(4);
  const HermTuple x = sample_ball_point(1, 4, 0.5, rng);
  const Vector v = random_unit_vector(4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_slice_coefficients(f, HermTuple(4, LetterClass::A), x, v, 8, 0.125, path));
  }
}
BENCHMARK(BM_Extraction)->Arg(static_cast<int>(ExtractionPath::Exact))->Arg(static_cast<int>(ExtractionPath::Fourier));

void BM_KrausConvexity1(benchmark::State& state) {
  const ScalarFn f = *scalar_preset("kraus-halfmass");
  for (auto _ : state) benchmark::DoNotOptimize(convexity_test_1var(f, {-0.9, 0.9}, state.range(0), 100, 5).min_eig);
}
BENCHMARK(BM_KrausConvexity1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
