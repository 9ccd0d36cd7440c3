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

#ifndef PRETEXTRL_PERMUTATION_HPP_
#define PRETEXTRL_PERMUTATION_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "pretextrl/seed.hpp"

namespace pretextrl {

// Jigsaw answer: a permutation of 1..n*n for grid order n.
class PermutationCode {
 public:
  // Throws ValidationError unless `order` is a permutation of 1..n*n.
  PermutationCode(std::vector<int> order, int n);

  static PermutationCode identity(int n);
  // Parses the comma-joined form, tolerating no whitespace.
  static PermutationCode parse(std::string_view text, int n);

  const std::vector<int>& order() const { return order_; }
  int grid_order() const { return n_; }
  std::size_t size() const { return order_.size(); }

  PermutationCode inverse() const;
  // "2,7,6,1,3,5,9,8,4"
  std::string to_string() const;

  friend bool operator==(const PermutationCode&, const PermutationCode&) = default;

 private:
  std::vector<int> order_;
  int n_;
};

// (n*n)! as a 128-bit integer; n*n must be <= 34.
uint128 factorial(int k);
std::string to_decimal(uint128 v);

// Lehmer-code rank in [0, (n*n)!): identity is 0, the reversal is the
// maximum.
uint128 perm_encode(const PermutationCode& perm);
// Throws ValidationError when index >= (n*n)!.
PermutationCode perm_decode(uint128 index, int n);

}  // namespace pretextrl

#endif  // PRETEXTRL_PERMUTATION_HPP_
