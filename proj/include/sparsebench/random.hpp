// Copyright 2026 The sparsebench Authors
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

#ifndef SPARSEBENCH_RANDOM_HPP_
#define SPARSEBENCH_RANDOM_HPP_

#include <cstdint>

namespace sparsebench::bench {

// Portable random streams for the Monte Carlo harness. Nothing here depends
// on the standard library's distribution implementations, so a seed names
// the same problem on every platform with an IEEE libm.
//
//   mix64(z):  z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//              z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
//   stream:    output i (i = 1, 2, ...) is mix64(seed + i * 0x9E3779B97F4A7C15)
//   uniform:   ((u >> 11) + 0.5) * 2^-53, strictly inside (0, 1)
//   normal:    Box-Muller on two uniforms (u1, u2):
//              sqrt(-2 ln u1) * cos(2 pi u2), then sqrt(-2 ln u1) * sin(2 pi u2)
//   below(b):  u mod b, redrawing while u < (2^64 mod b)

std::uint64_t mix64(std::uint64_t z);

/// Seed for one (k, trial) cell:
///   h = mix64(base + 0x9E3779B97F4A7C15)
///   h = mix64(h ^ (k * 0xD1B54A32D192ED03))
///   h = mix64(h ^ (trial * 0xABC98388FB8FAC03 + 0x8CB92BA72F3D8DD7))
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t k,
                         std::uint64_t trial_index);

/// SplitMix64 counter stream with uniform, bounded-integer and normal draws.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double next_uniform();
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);
  double next_normal();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sparsebench::bench

#endif  // SPARSEBENCH_RANDOM_HPP_
