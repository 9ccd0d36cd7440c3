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

#ifndef PRETEXTRL_SEED_HPP_
#define PRETEXTRL_SEED_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace pretextrl {

using uint128 = unsigned __int128;

// SplitMix64 output function applied to x + 0x9E3779B97F4A7C15.
std::uint64_t splitmix64(std::uint64_t x);

struct SeedSpec {
  std::uint64_t global_seed = 0;
  std::uint64_t episode_index = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// Per-episode stream seed:
//   splitmix64(splitmix64(global_seed) ^ episode_index)
// For a fixed global seed this is a bijection of episode_index.
std::uint64_t stream_seed(const SeedSpec& spec);

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the standard; every distribution below is implemented
// here so draws are identical across standard library implementations.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound);
  uint128 uniform_index128(uint128 bound);

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }

  // Fisher-Yates, last element first.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }
  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

  // k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

  // Sample an index from an unnormalized nonnegative weight vector.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

SeedStream derive_stream(const SeedSpec& spec);

}  // namespace pretextrl

#endif  // PRETEXTRL_SEED_HPP_
