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

#include "pretextrl/dataset.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "pretextrl/answers.hpp"
#include "pretextrl/commands.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/image_io.hpp"
#include "pretextrl/manifest.hpp"
#include "pretextrl/prompts.hpp"
#include "test_util.hpp"

namespace pretextrl {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GenConfig combination(std::size_t count) {
  GenConfig cfg;
  cfg.tasks = parse_task_selection("combination");
  cfg.count = count;
  cfg.seed = 99;
  return cfg;
}

TEST(TaskSelection, CombinationIsAllVisionTasks) {
  const auto t = parse_task_selection("combination");
  EXPECT_EQ(t, (std::vector<Task>(std::begin(kVisionTasks), std::end(kVisionTasks))));
  EXPECT_EQ(parse_task_selection("jigsaw"), std::vector<Task>{Task::kJigsaw});
  EXPECT_THROW(parse_task_selection("nope"), ValidationError);
}

TEST(Generate, CombinationSplitsEvenlyAndInterleaves) {
  const ImageCorpus corpus = synthetic_corpus(5, 24, 24, 1);
  const auto eps = generate_vision_episodes(corpus, combination(400));
  const auto counts = count_by_task(eps);
  for (Task t : kVisionTasks) EXPECT_EQ(counts.at(std::string(task_name(t))), 100u);
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_EQ(eps[i].record.task, kVisionTasks[i % 4]);
  }
}

TEST(Generate, ContrastiveLabelsAlternate) {
  const ImageCorpus corpus = synthetic_corpus(5, 24, 24, 2);
  GenConfig cfg;
  cfg.tasks = {Task::kContrastive};
  cfg.count = 101;
  const auto eps = generate_vision_episodes(corpus, cfg);
  int positive = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    EXPECT_EQ(*eps[i].record.target, i % 2 == 0 ? "positive" : "negative");
    positive += *eps[i].record.target == "positive";
  }
  EXPECT_EQ(positive, 51);
}

TEST(Generate, WorkerCountDoesNotChangeOutput) {
  const ImageCorpus corpus = synthetic_corpus(6, 30, 30, 3);
  GenConfig cfg = combination(64);
  cfg.difficulty = Difficulty::kHard;
  const auto a = generate_vision_episodes(corpus, cfg);
  cfg.workers = 7;
  const auto b = generate_vision_episodes(corpus, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].record, b[i].record);
    EXPECT_EQ(a[i].images, b[i].images);
  }
}

TEST(Generate, PrefixIsStableUnderLargerCount) {
  const ImageCorpus corpus = synthetic_corpus(4, 20, 20, 4);
  const auto small = generate_vision_episodes(corpus, combination(10));
  const auto large = generate_vision_episodes(corpus, combination(30));
  for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i].record, large[i].record);
}

TEST(Generate, ErrorsOnBadInputs) {
  ImageCorpus empty;
  EXPECT_THROW(generate_vision_episodes(empty, combination(4)), ValidationError);
  EXPECT_NO_THROW(generate_vision_episodes(empty, combination(0)));
  const ImageCorpus one = synthetic_corpus(1, 20, 20, 5);
  GenConfig cfg;
  cfg.tasks = {Task::kContrastive};
  cfg.count = 2;
  EXPECT_THROW(generate_vision_episodes(one, cfg), ValidationError);
  cfg.tasks = {Task::kLink};
  EXPECT_THROW(generate_vision_episodes(one, cfg), ValidationError);
}

TEST(Generate, GraphTasksRoundRobin) {
  const TextAttributedGraph g = synthetic_graph(30, 60, 6);
  GenConfig cfg;
  cfg.tasks = {Task::kAttributeMask, Task::kNeighbor, Task::kLink};
  cfg.count = 90;
  cfg.workers = 3;
  const auto eps = generate_graph_episodes(g, cfg);
  const auto counts = count_by_task(eps);
  EXPECT_EQ(counts.at("attribute_mask"), 30u);
  EXPECT_EQ(counts.at("neighbor"), 30u);
  EXPECT_EQ(counts.at("link"), 30u);
  for (const auto& e : eps) {
    EXPECT_EQ(verify(e.record, render_answer(*e.record.target)).reward, 1);
  }
}

TEST(WriteDataset, FilesAndHiddenTargets) {
  testing::TempDir dir;
  const ImageCorpus corpus = synthetic_corpus(3, 20, 20, 7);
  const auto eps = generate_vision_episodes(corpus, combination(8));
  const DatasetPaths paths = write_dataset(eps, dir.path(), false);
  EXPECT_TRUE(std::filesystem::exists(paths.answers));
  auto loaded = read_manifest(paths.manifest);
  ASSERT_EQ(loaded.size(), 8u);
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_FALSE(loaded[i].target);
    for (std::size_t k = 0; k < loaded[i].images.size(); ++k) {
      EXPECT_EQ(read_image(dir.path() / loaded[i].images[k]), eps[i].images[k]);
    }
  }
  attach_answers(loaded, read_answers(paths.answers));
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_TRUE(loaded[i].target_hash);
    loaded[i].target_hash.reset();
    EXPECT_TRUE(loaded[i] == eps[i].record) << eps[i].record.id;
  }
}

TEST(Corpus, LoadsSortedImagesAndSkipsOthers) {
  testing::TempDir dir;
  const ImageCorpus c = synthetic_corpus(3, 8, 8, 8);
  write_png(c.images[2], dir / "b.png");
  write_raw(c.images[0], dir / "a.rgb");
  write_png(c.images[1], dir / "c.png");
  std::ofstream(dir / "notes.txt") << "x";
  const ImageCorpus loaded = load_image_corpus(dir.path());
  EXPECT_EQ(loaded.ids, (std::vector<std::string>{"a.rgb", "b.png", "c.png"}));
  EXPECT_EQ(loaded.images[0], c.images[0]);
  EXPECT_THROW(load_image_corpus(dir / "missing"), IoError);
}

TEST(Commands, GenIsByteDeterministic) {
  testing::TempDir dir;
  SynthCorpusOptions synth;
  synth.out = dir / "corpus";
  synth.count = 4;
  synth.size = 24;
  std::ostringstream log;
  ASSERT_EQ(cmd_synth_corpus(synth, log), kExitOk);
  GenOptions opt;
  opt.corpus = synth.out;
  opt.count = 20;
  opt.seed = 5;
  opt.out = dir / "a";
  ASSERT_EQ(cmd_gen(opt, log), kExitOk);
  opt.out = dir / "b";
  opt.workers = 4;
  ASSERT_EQ(cmd_gen(opt, log), kExitOk);
  EXPECT_EQ(slurp(dir / "a" / "manifest.jsonl"), slurp(dir / "b" / "manifest.jsonl"));
  EXPECT_EQ(slurp(dir / "a" / "manifest.answers.jsonl"),
            slurp(dir / "b" / "manifest.answers.jsonl"));
  EXPECT_NE(log.str().find("rotation"), std::string::npos);
}

TEST(Commands, EmptyCountGivesEmptyManifest) {
  testing::TempDir dir;
  SynthCorpusOptions synth;
  synth.out = dir / "corpus";
  synth.count = 2;
  std::ostringstream log;
  cmd_synth_corpus(synth, log);
  GenOptions opt;
  opt.corpus = synth.out;
  opt.out = dir / "out";
  ASSERT_EQ(cmd_gen(opt, log), kExitOk);
  EXPECT_TRUE(read_manifest(dir / "out" / "manifest.jsonl").empty());
}

TEST(Commands, VerifyWritesResultsAndSummary) {
  testing::TempDir dir;
  const ImageCorpus corpus = synthetic_corpus(3, 20, 20, 9);
  const auto eps = generate_vision_episodes(corpus, combination(12));
  const auto paths = write_dataset(eps, dir.path(), false);
  std::vector<CompletionRecord> comps;
  for (const auto& e : eps) comps.push_back({e.record.id, render_answer(*e.record.target)});
  comps.push_back({"unknown", render_answer("x")});
  write_completions(comps, dir / "c.jsonl");
  VerifyOptions opt;
  opt.manifest = paths.manifest;
  opt.answers = paths.answers;
  opt.completions = dir / "c.jsonl";
  std::ostringstream out;
  EXPECT_EQ(cmd_verify(opt, out), kExitOk);
  EXPECT_NE(out.str().find("unknown ids: 1"), std::string::npos);
  EXPECT_NE(out.str().find("jigsaw"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "c.jsonl.results.jsonl"));
}

TEST(Commands, ExitCodes) {
  std::ostringstream err;
  EXPECT_EQ(run_guarded(err, [] { return kExitOk; }), kExitOk);
  EXPECT_EQ(run_guarded(err, []() -> int { throw ValidationError("v"); }), kExitValidation);
  EXPECT_EQ(run_guarded(err, []() -> int { throw IoError("io"); }), kExitIo);
  GenOptions opt;
  opt.corpus = "/nonexistent";
  opt.out = "/tmp/unused";
  opt.count = 1;
  EXPECT_EQ(run_guarded(err, [&] { return cmd_gen(opt, err); }), kExitIo);
  opt.task = "nope";
  EXPECT_EQ(run_guarded(err, [&] { return cmd_gen(opt, err); }), kExitValidation);
}

TEST(Commands, TrainToyLogsAreDeterministic) {
  testing::TempDir dir;
  TrainToyOptions opt;
  opt.steps = 100;
  opt.seed = 3;
  opt.out = dir / "a";
  const auto a = train_toy(opt);
  opt.out = dir / "b";
  const auto b = train_toy(opt);
  EXPECT_EQ(a.log, b.log);
  EXPECT_EQ(slurp(dir / "a" / "train_log.jsonl"), slurp(dir / "b" / "train_log.jsonl"));
  EXPECT_EQ(slurp(dir / "a" / "policy.json"), slurp(dir / "b" / "policy.json"));
}

}  // namespace
}  // namespace pretextrl
