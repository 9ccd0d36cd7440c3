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

#include "pretextrl/answers.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "pretextrl/error.hpp"
#include "pretextrl/prompts.hpp"
#include "pretextrl/vision_tasks.hpp"
#include "test_util.hpp"

namespace pretextrl {
namespace {

EpisodeRecord make(Task task, Difficulty d, std::string target,
                   std::optional<std::vector<std::string>> space, std::string id = "e") {
  EpisodeRecord r;
  r.id = std::move(id);
  r.task = task;
  r.difficulty = d;
  r.target = std::move(target);
  r.answer_space = std::move(space);
  return r;
}

TEST(Parse, StrictGrammar) {
  const auto ok = parse_completion("  <think>reason</think>\n <answer> 90 </answer>\n");
  EXPECT_TRUE(ok.well_formed);
  EXPECT_EQ(ok.think, "reason");
  EXPECT_EQ(ok.answer, "90");
  for (const char* bad : {"<answer>90</answer>",
                          "<think>x</think>",
                          "<think>x</think><answer>90</answer> trailing",
                          "prefix <think>x</think><answer>90</answer>",
                          "<think>x<think>y</think><answer>90</answer>",
                          "<think>x</think><answer>9<answer>0</answer>",
                          "<think>x</think><answer>90",
                          "<think>x</think><answer>1</answer><answer>2</answer>"}) {
    EXPECT_FALSE(parse_completion(bad).well_formed) << bad;
  }
}

TEST(Parse, BestEffortExtractionForDiagnostics) {
  const auto p = parse_completion("<answer>270</answer>", AnswerKind::kRotation);
  EXPECT_FALSE(p.well_formed);
  EXPECT_EQ(p.answer, "270");
}

TEST(Canonicalize, PerKind) {
  EXPECT_EQ(canonicalize_answer(" 270 Degrees. ", AnswerKind::kRotation), "270");
  EXPECT_EQ(canonicalize_answer("90°", AnswerKind::kRotation), "90");
  EXPECT_EQ(canonicalize_answer("2, 7,6 ,1", AnswerKind::kPermutation), "2,7,6,1");
  EXPECT_EQ(canonicalize_answer("3 / 3", AnswerKind::kPosition), "3/3");
  EXPECT_EQ(canonicalize_answer("Positive.", AnswerKind::kCategorical), "positive");
  EXPECT_EQ(canonicalize_answer("  Graph   Neural. ", AnswerKind::kFreeText), "graph neural");
  EXPECT_EQ(canonicalize_answer("c, a,b,a", AnswerKind::kIdSet), "a,b,c");
  EXPECT_EQ(canonicalize_answer("A  B , C", AnswerKind::kGeneric), "a b,c");
}

TEST(Canonicalize, Idempotent) {
  const char* inputs[] = {" 270 Degrees. ", "2, 7,6 ,1", "3 / 3", "Positive.", "c, a,b,a",
                          "Hello   World!  "};
  for (AnswerKind k : {AnswerKind::kGeneric, AnswerKind::kRotation, AnswerKind::kPermutation,
                       AnswerKind::kCategorical, AnswerKind::kPosition, AnswerKind::kFreeText,
                       AnswerKind::kIdSet}) {
    for (const char* in : inputs) {
      const std::string once = canonicalize_answer(in, k);
      EXPECT_EQ(canonicalize_answer(once, k), once) << in;
    }
  }
}

TEST(Verify, AppendixExemplars) {
  const auto rot = make(Task::kRotation, Difficulty::kStandard, "270", rotation_answer_space(90));
  const auto jig = make(Task::kJigsaw, Difficulty::kHard, "2,7,6,1,3,5,9,8,4", std::nullopt);
  const auto con = make(Task::kContrastive, Difficulty::kStandard, "positive",
                        std::vector<std::string>{"positive", "negative"});
  const auto pos = make(Task::kPosition, Difficulty::kHard, "3/3", position_answer_space(3));
  EXPECT_EQ(verify(rot, "<think>The object is upside down then turned.</think> "
                        "<answer>270</answer>").reward, 1);
  EXPECT_EQ(verify(jig, "<think>patch reasoning</think> <answer>2,7,6,1,3,5,9,8,4</answer>")
                .reward, 1);
  EXPECT_EQ(verify(con, "<think>same scene</think> <answer>positive</answer>").reward, 1);
  EXPECT_EQ(verify(pos, "<think>bottom right</think> <answer>3/3</answer>").reward, 1);
  for (const auto* e : {&rot, &jig, &con, &pos}) {
    const std::string a = *e->target;
    const auto missing = verify(*e, "<answer>" + a + "</answer>");
    EXPECT_EQ(missing.reward, 0);
    EXPECT_EQ(missing.reason, RewardReason::kMalformed);
    EXPECT_EQ(verify(*e, render_answer(a) + " Hope this helps.").reward, 0);
  }
}

TEST(Verify, Reasons) {
  const auto rot = make(Task::kRotation, Difficulty::kStandard, "90", rotation_answer_space(90));
  EXPECT_EQ(verify(rot, render_answer("90")).reason, RewardReason::kCorrect);
  EXPECT_EQ(verify(rot, render_answer("180")).reason, RewardReason::kWrongAnswer);
  EXPECT_EQ(verify(rot, render_answer("45")).reason, RewardReason::kOutOfSpace);
  EXPECT_EQ(verify(rot, "garbage").reason, RewardReason::kMalformed);
  const auto jig = make(Task::kJigsaw, Difficulty::kHard, "1,2,3,4,5,6,7,8,9", std::nullopt);
  EXPECT_EQ(verify(jig, render_answer("1,2,3")).reason, RewardReason::kOutOfSpace);
  EXPECT_EQ(verify(jig, render_answer("1,1,3,4,5,6,7,8,9")).reason, RewardReason::kOutOfSpace);
  EXPECT_EQ(verify(jig, render_answer("2,1,3,4,5,6,7,8,9")).reason,
            RewardReason::kWrongAnswer);
  EXPECT_EQ(reason_name(RewardReason::kOutOfSpace), "out_of_space");
}

TEST(Verify, RequiresPlaintextTarget) {
  auto e = make(Task::kRotation, Difficulty::kStandard, "90", rotation_answer_space(90));
  e.target.reset();
  e.target_hash = "h";
  EXPECT_THROW(verify(e, render_answer("90")), ValidationError);
}

TEST(Verify, IsPure) {
  const auto e = make(Task::kLink, Difficulty::kStandard, "yes",
                      std::vector<std::string>{"yes", "no"});
  const auto a = verify(e, render_answer("Yes"));
  const auto b = verify(e, render_answer("Yes"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.reward, 1);
}

std::vector<EpisodeRecord> rotation_batch(int n) {
  std::vector<EpisodeRecord> out;
  const auto space = rotation_answer_space(90);
  for (int i = 0; i < n; ++i) {
    out.push_back(make(Task::kRotation, Difficulty::kStandard, space[i % 4], space,
                       "r" + std::to_string(i)));
  }
  out.push_back(make(Task::kContrastive, Difficulty::kHard, "negative",
                     std::vector<std::string>{"positive", "negative"}, "c0"));
  return out;
}

TEST(BatchVerify, OrderStableAndWorkerIndependent) {
  const auto eps = rotation_batch(400);
  std::vector<CompletionRecord> comps;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    comps.push_back({eps[i].id, render_answer(i % 3 ? *eps[i].target : "0")});
  }
  comps.push_back({"missing", render_answer("0")});
  const auto serial = batch_verify(eps, comps, 1);
  const auto parallel = batch_verify(eps, comps, 8);
  ASSERT_EQ(serial.rows.size(), comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    EXPECT_EQ(serial.rows[i].id, comps[i].id);
    EXPECT_EQ(parallel.rows[i].id, comps[i].id);
    EXPECT_EQ(serial.rows[i].result, parallel.rows[i].result);
  }
  EXPECT_EQ(serial.unknown_ids, 1u);
  EXPECT_FALSE(serial.rows.back().result);
  EXPECT_FALSE(serial.rows.back().error.empty());
  const auto key = std::make_pair(std::string("rotation"), std::string("standard"));
  EXPECT_EQ(serial.by_group.at(key).count, 400u);
  EXPECT_EQ(serial.overall.count, 401u);
  EXPECT_EQ(serial.by_group.at({"contrastive", "hard"}).count, 1u);
}

TEST(BatchVerify, GoldenCompletionsScoreOne) {
  const auto eps = rotation_batch(40);
  std::vector<CompletionRecord> comps;
  for (const auto& e : eps) comps.push_back({e.id, render_answer(*e.target)});
  EXPECT_DOUBLE_EQ(batch_verify(eps, comps).overall.mean(), 1.0);
}

// Answers drawn uniformly from the answer space score at chance 1/|space|.
TEST(BatchVerify, ShuffledTargetsScoreAtChance) {
  SeedStream rng(3);
  std::vector<EpisodeRecord> eps;
  const auto space = rotation_answer_space(45);
  constexpr int kN = 8000;
  for (int i = 0; i < kN; ++i) {
    eps.push_back(make(Task::kRotation, Difficulty::kHard, space[rng.uniform_index(8)], space,
                       "h" + std::to_string(i)));
  }
  std::vector<CompletionRecord> comps;
  for (const auto& e : eps) comps.push_back({e.id, render_answer(space[rng.uniform_index(8)])});
  const double mean = batch_verify(eps, comps, 4).overall.mean();
  EXPECT_NEAR(mean, 0.125, 3 * std::sqrt(0.125 * 0.875 / kN));
}

TEST(Completions, FileRoundTrip) {
  testing::TempDir dir;
  const std::vector<CompletionRecord> comps{{"a", "<think>x</think><answer>1</answer>"},
                                            {"b", "line\nbreak"}};
  write_completions(comps, dir / "c.jsonl");
  const auto back = read_completions(dir / "c.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].completion, "line\nbreak");
  const auto eps = rotation_batch(1);
  write_results(batch_verify(eps, back), dir / "r.jsonl");
  std::ifstream in(dir / "r.jsonl");
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2);
}

}  // namespace
}  // namespace pretextrl
