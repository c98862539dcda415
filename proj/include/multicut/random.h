// Copyright 2026 The Multicut Labeling Authors
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

#ifndef MULTICUT_RANDOM_H_
#define MULTICUT_RANDOM_H_

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace multicut {

// The standard distributions are implementation defined; these helpers keep
// seeded output identical across standard libraries.
using Rng = std::mt19937_64;

inline double UniformReal(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1].
inline double UniformPositive(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

inline int UniformInt(Rng& rng, int n) {
  return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

template <typename T>
void Shuffle(std::vector<T>& items, Rng& rng) {
  for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
    std::swap(items[i], items[UniformInt(rng, i + 1)]);
  }
}

}  // namespace multicut

#endif  // MULTICUT_RANDOM_H_
