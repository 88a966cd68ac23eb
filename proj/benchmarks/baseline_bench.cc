// Copyright 2026 The spanalign Authors
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

#include "spanalign/baseline.h"

namespace spanalign {
namespace {

void BM_DpAlignWith(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  // Cheap deterministic similarity favouring the diagonal.
  const BeadSimilarity sim = [](SentenceRange s, SentenceRange t) {
    const int d = s.begin - t.begin;
    return 1.0 / (1.0 + d * d);
  };
  for (auto _ : state) benchmark::DoNotOptimize(DpAlignWith(n, n, sim, BeadPenalties{}));
  state.SetComplexityN(n);
}
BENCHMARK(BM_DpAlignWith)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

}  // namespace
}  // namespace spanalign
