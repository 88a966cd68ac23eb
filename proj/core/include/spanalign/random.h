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

#ifndef SPANALIGN_RANDOM_H_
#define SPANALIGN_RANDOM_H_

#include <cstdint>
#include <random>

namespace spanalign {

// Independent, reproducible stream per (seed, index). Bounded draws use
// rejection sampling so results do not depend on the standard library's
// distribution implementations.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t index);

  std::uint64_t Next() { return engine_(); }
  // Uniform on [0, n); n must be positive.
  std::uint64_t Below(std::uint64_t n);
  // Uniform on [0, 1).
  double Unit();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t SplitMix64(std::uint64_t x);

}  // namespace spanalign

#endif  // SPANALIGN_RANDOM_H_
