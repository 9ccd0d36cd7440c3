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

#include <algorithm>
#include <charconv>

#include "pretextrl/error.hpp"

namespace pretextrl {

PermutationCode::PermutationCode(std::vector<int> order, int n)
    : order_(std::move(order)), n_(n) {
  if (n < 1) throw ValidationError("permutation: grid order must be >= 1");
  const std::size_t len = static_cast<std::size_t>(n) * n;
  if (order_.size() != len) {
    throw ValidationError("permutation: expected " + std::to_string(len) +
                          " entries, got " + std::to_string(order_.size()));
  }
  std::vector<bool> seen(len + 1, false);
  for (int v : order_) {
    if (v < 1 || static_cast<std::size_t>(v) > len || seen[v]) {
      throw ValidationError("permutation: not a permutation of 1.." + std::to_string(len));
    }
    seen[v] = true;
  }
}

PermutationCode PermutationCode::identity(int n) {
  std::vector<int> order(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i) + 1;
  return PermutationCode(std::move(order), n);
}

PermutationCode PermutationCode::parse(std::string_view text, int n) {
  std::vector<int> order;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view tok = text.substr(start, comma - start);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ValidationError("permutation: malformed entry '" + std::string(tok) + "'");
    }
    order.push_back(v);
    start = comma + 1;
  }
  return PermutationCode(std::move(order), n);
}

PermutationCode PermutationCode::inverse() const {
  std::vector<int> inv(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) inv[order_[i] - 1] = static_cast<int>(i) + 1;
  return PermutationCode(std::move(inv), n_);
}

std::string PermutationCode::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(order_[i]);
  }
  return out;
}

uint128 factorial(int k) {
  if (k < 0 || k > 34) throw ValidationError("factorial: argument out of 128-bit range");
  uint128 f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<uint128>(i);
  return f;
}

std::string to_decimal(uint128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

uint128 perm_encode(const PermutationCode& perm) {
  const auto& order = perm.order();
  const int len = static_cast<int>(order.size());
  uint128 index = 0;
  for (int i = 0; i < len; ++i) {
    // Lehmer digit: later entries smaller than this one.
    int smaller = 0;
    for (int j = i + 1; j < len; ++j) smaller += order[j] < order[i];
    index = index * static_cast<uint128>(len - i) + static_cast<uint128>(smaller);
  }
  return index;
}

PermutationCode perm_decode(uint128 index, int n) {
  const int len = n * n;
  if (index >= factorial(len)) {
    throw ValidationError("perm_decode: index " + to_decimal(index) + " >= (" +
                          std::to_string(len) + ")!");
  }
  // Mixed-radix digits, least significant first.
  std::vector<int> digits(len);
  for (int i = len - 1; i >= 0; --i) {
    const auto radix = static_cast<uint128>(len - i);
    digits[i] = static_cast<int>(index % radix);
    index /= radix;
  }
  std::vector<int> pool(len);
  for (int i = 0; i < len; ++i) pool[i] = i + 1;
  std::vector<int> order;
  order.reserve(len);
  for (int i = 0; i < len; ++i) {
    order.push_back(pool[digits[i]]);
    pool.erase(pool.begin() + digits[i]);
  }
  return PermutationCode(std::move(order), n);
}

}  // namespace pretextrl
