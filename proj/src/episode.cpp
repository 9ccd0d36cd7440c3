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

#include <algorithm>

#include "pretextrl/error.hpp"
#include "pretextrl/hash.hpp"

namespace pretextrl {

std::string_view task_name(Task task) {
  switch (task) {
    case Task::kRotation: return "rotation";
    case Task::kJigsaw: return "jigsaw";
    case Task::kContrastive: return "contrastive";
    case Task::kPosition: return "position";
    case Task::kAttributeMask: return "attribute_mask";
    case Task::kNeighbor: return "neighbor";
    case Task::kLink: return "link";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::kRotation, Task::kJigsaw, Task::kContrastive, Task::kPosition,
                 Task::kAttributeMask, Task::kNeighbor, Task::kLink}) {
    if (task_name(t) == name) return t;
  }
  throw ValidationError("unknown task: " + std::string(name));
}

bool is_vision_task(Task task) {
  return std::find(std::begin(kVisionTasks), std::end(kVisionTasks), task) !=
         std::end(kVisionTasks);
}

std::string_view difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::kStandard: return "standard";
    case Difficulty::kHard: return "hard";
    case Difficulty::kXHard: return "xhard";
  }
  return "unknown";
}

Difficulty parse_difficulty(std::string_view name) {
  for (Difficulty d : {Difficulty::kStandard, Difficulty::kHard, Difficulty::kXHard}) {
    if (difficulty_name(d) == name) return d;
  }
  throw ValidationError("unknown difficulty: " + std::string(name));
}

DifficultyPreset preset(Difficulty d) {
  DifficultyPreset p;
  p.name = d;
  switch (d) {
    case Difficulty::kStandard:
      break;
    case Difficulty::kHard:
      p.rotation_step = 45;
      p.grid_order = 3;
      p.augmentation_probability = 0.8;
      p.crop_scale = {0.08, 0.3};
      break;
    case Difficulty::kXHard:
      p.rotation_step = 45;
      p.grid_order = 5;
      p.augmentation_probability = 0.8;
      p.crop_scale = {0.08, 0.3};
      break;
  }
  return p;
}

std::vector<std::string> rotation_answer_space(int step) {
  if (step != 90 && step != 45) {
    throw ValidationError("rotation lattice step must be 90 or 45");
  }
  std::vector<std::string> out;
  for (int a = 0; a < 360; a += step) out.push_back(std::to_string(a));
  return out;
}

std::size_t count_image_placeholders(std::string_view prompt) {
  std::size_t n = 0;
  for (auto pos = prompt.find(kImagePlaceholder); pos != std::string_view::npos;
       pos = prompt.find(kImagePlaceholder, pos + kImagePlaceholder.size())) {
    ++n;
  }
  return n;
}

std::string episode_id(Task task, Difficulty difficulty, const SeedSpec& seed,
                       std::string_view target) {
  std::string key;
  key.append(task_name(task)).push_back('\n');
  key.append(difficulty_name(difficulty)).push_back('\n');
  key.append(std::to_string(seed.global_seed)).push_back('\n');
  key.append(std::to_string(seed.episode_index)).push_back('\n');
  key.append(target);
  return sha256_hex(key).substr(0, 32);
}

std::string target_digest(std::string_view salt, std::string_view target) {
  std::string key(salt);
  key.push_back('\n');
  key.append(target);
  return sha256_hex(key);
}

void validate(const EpisodeRecord& r) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("episode " + (r.id.empty() ? std::string("<no id>") : r.id) +
                          ": " + what);
  };
  if (r.id.empty()) fail("empty id");
  if (count_image_placeholders(r.prompt) != r.images.size()) {
    fail("prompt has " + std::to_string(count_image_placeholders(r.prompt)) +
         " image placeholders but " + std::to_string(r.images.size()) + " images");
  }
  if (!r.target && !r.target_hash) fail("neither target nor target_hash present");
  if (r.target && r.answer_space &&
      std::find(r.answer_space->begin(), r.answer_space->end(), *r.target) ==
          r.answer_space->end()) {
    fail("target '" + *r.target + "' not in answer_space");
  }
  if (is_vision_task(r.task) && !r.graph_context.empty()) {
    fail("vision episode carries a graph payload");
  }
}

}  // namespace pretextrl
