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

#include "pretextrl/selftest.hpp"

#include <gtest/gtest.h>

namespace pretextrl {
namespace {

TEST(Selftest, CleanRunPasses) {
  SelftestOptions opt;
  opt.iterations = 5;
  const SelftestReport r = run_selftest(opt);
  EXPECT_TRUE(r.passed()) << format_report(r);
  EXPECT_GE(r.suites.size(), 9u);
  for (const auto& s : r.suites) EXPECT_GT(s.checks, 0u) << s.name;
}

TEST(Selftest, PlantedJigsawFaultIsNamed) {
  SelftestOptions opt;
  opt.iterations = 5;
  opt.corrupt_jigsaw_target = true;
  const SelftestReport r = run_selftest(opt);
  EXPECT_FALSE(r.passed());
  for (const auto& s : r.suites) {
    if (s.name == "jigsaw_reconstruction") {
      EXPECT_EQ(s.failures, s.checks);
    } else {
      EXPECT_EQ(s.failures, 0u) << s.name;
    }
  }
  const std::string text = format_report(r);
  EXPECT_NE(text.find("FAIL jigsaw_reconstruction"), std::string::npos);
  EXPECT_NE(text.find("checks="), std::string::npos);
}

}  // namespace
}  // namespace pretextrl
