// Copyright 2026 The tsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "tsim/tsim.hpp"

namespace {

using tsim::Scalar;
using tsim::Tensor;

Tensor random_tensor(int order, int dim, double density, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  Tensor t(order, dim);
  for (std::size_t k = 0; k < t.size(); ++k)
    if (unit(engine) < density) t[k] = Scalar(normal(engine), normal(engine));
  return t;
}

tsim::StructuredWitness random_witness(int dim, int order, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<int> image(dim);
  std::iota(image.begin(), image.end(), 0);
  std::shuffle(image.begin(), image.end(), engine);
  std::uniform_real_distribution<double> mag(0.5, 2.0), phase(0.0, 6.283185307179586);
  std::vector<Scalar> d(dim);
  for (Scalar& v : d) v = std::polar(mag(engine), phase(engine));
  return {tsim::Permutation(image), tsim::DiagonalScaling(d), order};
}

void BM_RightMatrixProduct(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const Tensor a = random_tensor(m, n, 1.0, 1);
  const tsim::Matrix q(random_tensor(2, n, 1.0, 2));
  for (auto _ : state) benchmark::DoNotOptimize(tsim::right_matrix_product(a, q));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.size()));
}
BENCHMARK(BM_RightMatrixProduct)->Args({3, 4})->Args({4, 6})->Args({5, 6})->Args({3, 20});

void BM_GeneralProductTensorTensor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Tensor a = random_tensor(3, n, 1.0, 3);
  const Tensor b = random_tensor(3, n, 1.0, 4);
  for (auto _ : state) benchmark::DoNotOptimize(tsim::general_product(a, b));
}
BENCHMARK(BM_GeneralProductTensorTensor)->Arg(2)->Arg(3)->Arg(4);

void BM_DecideSimilar(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const double density = static_cast<double>(state.range(2)) / 100.0;
  const Tensor a = random_tensor(m, n, density, 5);
  const Tensor b = tsim::clean(
      tsim::general_transform(a, tsim::compose_witness(random_witness(n, m, 6))));
  for (auto _ : state) benchmark::DoNotOptimize(tsim::decide_similar(a, b));
}
BENCHMARK(BM_DecideSimilar)
    ->Args({3, 4, 30})
    ->Args({3, 6, 10})
    ->Args({4, 5, 20})
    ->Args({3, 8, 5})
    ->Args({3, 5, 100});

void BM_DecideSymmetricPattern(benchmark::State& state) {
  // Every relabeling fits the unit pattern, so the matcher enumerates n!.
  const int n = static_cast<int>(state.range(0));
  const Tensor a = tsim::unit_tensor(3, n);
  Tensor b = a;
  b[0] = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(tsim::decide_similar(a, b));
}
BENCHMARK(BM_DecideSymmetricPattern)->Arg(4)->Arg(6);

void BM_CharPolyDim2(benchmark::State& state) {
  const Tensor a = random_tensor(static_cast<int>(state.range(0)), 2, 1.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(tsim::char_poly_dim2(a));
}
BENCHMARK(BM_CharPolyDim2)->DenseRange(3, 6);

void BM_SpectrumDim2(benchmark::State& state) {
  const Tensor a = random_tensor(static_cast<int>(state.range(0)), 2, 1.0, 8);
  for (auto _ : state) benchmark::DoNotOptimize(tsim::spectrum_dim2(a));
}
BENCHMARK(BM_SpectrumDim2)->DenseRange(3, 6);

void BM_DecomposeWitness(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const tsim::Witness w = tsim::compose_witness(random_witness(n, m, 9));
  for (auto _ : state) benchmark::DoNotOptimize(tsim::decompose_witness(w));
}
BENCHMARK(BM_DecomposeWitness)->Args({3, 6})->Args({5, 6});

}  // namespace

BENCHMARK_MAIN();
