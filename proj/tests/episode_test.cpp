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

#include "pretextrl/episode.hpp"

#include <gtest/gtest.h>

#include "pretextrl/error.hpp"
#include "pretextrl/hash.hpp"

namespace pretextrl {
namespace {

TEST(Names, RoundTrip) {
  for (Task t : kVisionTasks) EXPECT_EQ(parse_task(task_name(t)), t);
  for (Task t : kGraphTasks) {
    EXPECT_EQ(parse_task(task_name(t)), t);
    EXPECT_FALSE(is_vision_task(t));
  }
  for (Difficulty d : {Difficulty::kStandard, Difficulty::kHard, Difficulty::kXHard}) {
    EXPECT_EQ(parse_difficulty(difficulty_name(d)), d);
  }
  EXPECT_THROW(parse_task("colorization"), ValidationError);
  EXPECT_THROW(parse_difficulty("easy"), ValidationError);
}

TEST(Presets, StandardValues) {
  const DifficultyPreset p = preset(Difficulty::kStandard);
  EXPECT_EQ(p.rotation_step, 90);
  EXPECT_EQ(p.grid_order, 2);
  EXPECT_DOUBLE_EQ(p.augmentation_probability, 0.2);
  EXPECT_FALSE(p.position_patch_augmentation);
}

TEST(Presets, HardValues) {
  const DifficultyPreset p = preset(Difficulty::kHard);
  EXPECT_EQ(p.rotation_step, 45);
  EXPECT_EQ(p.grid_order, 3);
  EXPECT_DOUBLE_EQ(p.augmentation_probability, 0.8);
  EXPECT_DOUBLE_EQ(p.crop_scale.hi, 0.3);
}

TEST(Presets, XHardUsesFiveByFive) {
  const DifficultyPreset p = preset(Difficulty::kXHard);
  EXPECT_EQ(p.grid_order, 5);
  EXPECT_EQ(p.rotation_step, 45);
}

TEST(RotationAnswerSpace, Lattices) {
  EXPECT_EQ(rotation_answer_space(90), (std::vector<std::string>{"0", "90", "180", "270"}));
  EXPECT_EQ(rotation_answer_space(45).size(), 8u);
  EXPECT_EQ(rotation_answer_space(45)[7], "315");
  EXPECT_THROW(rotation_answer_space(30), ValidationError);
}

TEST(Placeholders, Counted) {
  EXPECT_EQ(count_image_placeholders("<image><image>\nq"), 2u);
  EXPECT_EQ(count_image_placeholders("none"), 0u);
}

TEST(EpisodeId, DeterministicAndSensitive) {
  const SeedSpec s{1, 2};
  const std::string a = episode_id(Task::kRotation, Difficulty::kStandard, s, "90");
  EXPECT_EQ(a.size(), 32u);
  EXPECT_EQ(a, episode_id(Task::kRotation, Difficulty::kStandard, s, "90"));
  EXPECT_NE(a, episode_id(Task::kRotation, Difficulty::kStandard, s, "180"));
  EXPECT_NE(a, episode_id(Task::kRotation, Difficulty::kHard, s, "90"));
  EXPECT_NE(a, episode_id(Task::kRotation, Difficulty::kStandard, {1, 3}, "90"));
  EXPECT_EQ(a, sha256_hex("rotation\nstandard\n1\n2\n90").substr(0, 32));
}

TEST(Sha256, KnownVector) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(target_digest("s", "t"), sha256_hex("s\nt"));
}

EpisodeRecord good_record() {
  EpisodeRecord r;
  r.id = "x";
  r.task = Task::kRotation;
  r.images = {"a.png", "b.png"};
  r.prompt = "<image><image>\nWhich angle?";
  r.answer_space = rotation_answer_space(90);
  r.target = "90";
  return r;
}

TEST(Validate, AcceptsGoodRecord) { EXPECT_NO_THROW(validate(good_record())); }

TEST(Validate, RejectsPlaceholderMismatch) {
  auto r = good_record();
  r.images.pop_back();
  EXPECT_THROW(validate(r), ValidationError);
}

TEST(Validate, RejectsTargetOutsideSpace) {
  auto r = good_record();
  r.target = "45";
  EXPECT_THROW(validate(r), ValidationError);
}

TEST(Validate, RequiresTargetOrHash) {
  auto r = good_record();
  r.target.reset();
  EXPECT_THROW(validate(r), ValidationError);
  r.target_hash = "abc";
  EXPECT_NO_THROW(validate(r));
}

TEST(Validate, VisionEpisodesCarryNoGraph) {
  auto r = good_record();
  r.graph_context = "Graph:";
  EXPECT_THROW(validate(r), ValidationError);
}

}  // namespace
}  // namespace pretextrl
