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

#include "sparsebench/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sparsebench::bench {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t k,
                         std::uint64_t trial_index) {
  std::uint64_t h = mix64(base_seed + kGolden);
  h = mix64(h ^ (k * 0xD1B54A32D192ED03ULL));
  return mix64(h ^ (trial_index * 0xABC98388FB8FAC03ULL + 0x8CB92BA72F3D8DD7ULL));
}

std::uint64_t CounterRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double CounterRng::next_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
  // 2^64 mod bound, computed without 128-bit arithmetic.
  const std::uint64_t excess = (0 - bound) % bound;
  while (true) {
    const std::uint64_t u = next_u64();
    if (u >= excess) return u % bound;
  }
}

double CounterRng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

}  // namespace sparsebench::bench
