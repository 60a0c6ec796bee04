/*
 * Copyright 2026 The cdeforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CDEFOREST_RNG_H_
#define CDEFOREST_RNG_H_

#include <cstdint>
#include <random>

namespace cdeforest {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream for substream `index` of a run seeded with `seed`. Trees
// draw from StreamFor(seed, tree_index) so results do not depend on the order
// or thread in which trees are built.
inline Rng StreamFor(std::uint64_t seed, std::uint64_t index) {
  return Rng(MixBits(MixBits(seed) ^ MixBits(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace cdeforest

#endif  // CDEFOREST_RNG_H_
