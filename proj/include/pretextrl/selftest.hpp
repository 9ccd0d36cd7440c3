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

#ifndef PRETEXTRL_SELFTEST_HPP_
#define PRETEXTRL_SELFTEST_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace pretextrl {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  // First few failure descriptions.
  std::vector<std::string> messages;
};

struct SelftestReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

struct SelftestOptions {
  std::uint64_t seed = 20260101;
  // Repetitions for randomized properties.
  int iterations = 25;
  // Swaps two entries of every jigsaw target before the reconstruction
  // check, which must then fail.
  bool corrupt_jigsaw_target = false;
};

SelftestReport run_selftest(const SelftestOptions& options = {});

// One line per suite: "PASS name checks=N failures=0", then failures.
std::string format_report(const SelftestReport& report);

}  // namespace pretextrl

#endif  // PRETEXTRL_SELFTEST_HPP_
