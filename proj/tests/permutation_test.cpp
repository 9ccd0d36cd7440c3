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

#include "pretextrl/permutation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "pretextrl/error.hpp"

namespace pretextrl {
namespace {

std::vector<int> iota_order(int n) {
  std::vector<int> v(static_cast<std::size_t>(n * n));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

TEST(Factorial, KnownValues) {
  EXPECT_EQ(factorial(0), 1u);
  EXPECT_EQ(factorial(4), 24u);
  EXPECT_EQ(factorial(9), 362880u);
  EXPECT_EQ(to_decimal(factorial(25)), "15511210043330985984000000");
  EXPECT_THROW(factorial(35), ValidationError);
}

TEST(PermutationCode, ValidatesInput) {
  EXPECT_THROW(PermutationCode({1, 2, 3}, 2), ValidationError);
  EXPECT_THROW(PermutationCode({1, 2, 2, 4}, 2), ValidationError);
  EXPECT_THROW(PermutationCode({0, 1, 2, 3}, 2), ValidationError);
  EXPECT_NO_THROW(PermutationCode({4, 3, 2, 1}, 2));
}

TEST(PermutationCode, ParseAndFormat) {
  const auto p = PermutationCode::parse("2,7,6,1,3,5,9,8,4", 3);
  EXPECT_EQ(p.to_string(), "2,7,6,1,3,5,9,8,4");
  EXPECT_EQ(p.order()[1], 7);
  EXPECT_THROW(PermutationCode::parse("1,2,3", 2), ValidationError);
  EXPECT_THROW(PermutationCode::parse("1,2,x,4", 2), ValidationError);
  EXPECT_THROW(PermutationCode::parse("1,,2,3", 2), ValidationError);
}

TEST(PermutationCode, InverseComposesToIdentity) {
  const auto p = PermutationCode::parse("2,7,6,1,3,5,9,8,4", 3);
  const auto q = p.inverse();
  for (int k = 0; k < 9; ++k) {
    EXPECT_EQ(p.order()[q.order()[k] - 1], k + 1);
    EXPECT_EQ(q.order()[p.order()[k] - 1], k + 1);
  }
  EXPECT_EQ(q.inverse(), p);
  EXPECT_EQ(PermutationCode::identity(2).to_string(), "1,2,3,4");
}

// The Lehmer rank is the lexicographic rank, so std::next_permutation
// enumerates ranks 0, 1, 2, ... in order.
TEST(Lehmer, MatchesLexicographicEnumerationN2) {
  auto v = iota_order(2);
  uint128 rank = 0;
  do {
    const PermutationCode p(v, 2);
    ASSERT_EQ(perm_encode(p), rank);
    ASSERT_EQ(perm_decode(rank, 2), p);
    ++rank;
  } while (std::next_permutation(v.begin(), v.end()));
  EXPECT_EQ(rank, 24u);
}

TEST(Lehmer, MatchesLexicographicEnumerationN3) {
  auto v = iota_order(3);
  uint128 rank = 0;
  do {
    ASSERT_EQ(perm_encode(PermutationCode(v, 3)), rank);
    ++rank;
  } while (std::next_permutation(v.begin(), v.end()));
  EXPECT_EQ(rank, factorial(9));
}

TEST(Lehmer, Extremes) {
  for (int n : {2, 3, 5}) {
    auto v = iota_order(n);
    EXPECT_EQ(perm_encode(PermutationCode(v, n)), 0u);
    std::reverse(v.begin(), v.end());
    EXPECT_EQ(perm_encode(PermutationCode(v, n)), factorial(n * n) - 1);
    EXPECT_EQ(perm_decode(factorial(n * n) - 1, n), PermutationCode(v, n));
    EXPECT_THROW(perm_decode(factorial(n * n), n), ValidationError);
  }
}

TEST(Lehmer, RoundTripN5Random) {
  SeedStream rng(17);
  for (int i = 0; i < 2000; ++i) {
    const uint128 r = rng.uniform_index128(factorial(25));
    ASSERT_EQ(perm_encode(perm_decode(r, 5)), r);
  }
}

}  // namespace
}  // namespace pretextrl
