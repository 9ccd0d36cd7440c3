// Copyright 2026 The pretextrl Authors
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

#include "pretextrl/seed.hpp"

#include <bit>
#include <numeric>

#include "pretextrl/error.hpp"

namespace pretextrl {

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(const SeedSpec& spec) {
  return splitmix64(splitmix64(spec.global_seed) ^ spec.episode_index);
}

SeedStream derive_stream(const SeedSpec& spec) {
  return SeedStream(stream_seed(spec));
}

std::uint64_t SeedStream::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("uniform_index: bound must be > 0");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  // Masked rejection: unbiased, at most 2 expected draws.
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(bound - 1);
  for (;;) {
    const std::uint64_t v = next_u64() & mask;
    if (v < bound) return v;
  }
}

uint128 SeedStream::uniform_index128(uint128 bound) {
  if (bound == 0) throw ValidationError("uniform_index128: bound must be > 0");
  const auto hi_bound = static_cast<std::uint64_t>(bound >> 64);
  if (hi_bound == 0) return uniform_index(static_cast<std::uint64_t>(bound));
  const std::uint64_t hi_mask =
      ~std::uint64_t{0} >> std::countl_zero(static_cast<std::uint64_t>(
                               (bound - 1) >> 64));
  for (;;) {
    const uint128 hi = next_u64() & hi_mask;
    const uint128 v = (hi << 64) | next_u64();
    if (v < bound) return v;
  }
}

std::int64_t SeedStream::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ValidationError("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(next_u64());
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                   uniform_index(span + 1));
}

double SeedStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> SeedStream::sample_without_replacement(std::size_t n,
                                                                std::size_t k) {
  if (k > n) throw ValidationError("sample_without_replacement: k > n");
  // Partial Fisher-Yates over an index table.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + uniform_index(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

std::size_t SeedStream::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("categorical: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("categorical: zero total weight");
  const double u = uniform01() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = i;
    acc += weights[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace pretextrl
