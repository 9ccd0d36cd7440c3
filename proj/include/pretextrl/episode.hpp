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

#ifndef PRETEXTRL_EPISODE_HPP_
#define PRETEXTRL_EPISODE_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pretextrl/augment.hpp"
#include "pretextrl/seed.hpp"

namespace pretextrl {

enum class Task {
  kRotation,
  kJigsaw,
  kContrastive,
  kPosition,
  kAttributeMask,
  kNeighbor,
  kLink,
};

inline constexpr Task kVisionTasks[] = {Task::kRotation, Task::kJigsaw,
                                        Task::kContrastive, Task::kPosition};
inline constexpr Task kGraphTasks[] = {Task::kAttributeMask, Task::kNeighbor,
                                       Task::kLink};

std::string_view task_name(Task task);
// Throws ValidationError for unknown names.
Task parse_task(std::string_view name);
bool is_vision_task(Task task);

enum class Difficulty { kStandard, kHard, kXHard };

std::string_view difficulty_name(Difficulty d);
Difficulty parse_difficulty(std::string_view name);

// Corruption knobs for every task at one difficulty level.
struct DifficultyPreset {
  Difficulty name = Difficulty::kStandard;
  // Rotation lattice spacing in degrees: 90 gives 4 classes, 45 gives 8.
  int rotation_step = 90;
  // Grid order shared by jigsaw and position.
  int grid_order = 2;
  // Per-augmentation application probability for contrastive views.
  double augmentation_probability = 0.2;
  // RandomResizedCrop area range for contrastive views.
  Range crop_scale{0.3, 1.0};
  // Position patch augmentation (grayscale, jitter, solarize). Off unless
  // the augmented-patch variant is requested.
  bool position_patch_augmentation = false;
  double position_patch_probability = 0.2;
};

DifficultyPreset preset(Difficulty d);

// Admissible rotation answers for a lattice step, e.g. {"0","90","180","270"}.
std::vector<std::string> rotation_answer_space(int step);

struct EpisodeRecord {
  std::string id;
  Task task = Task::kRotation;
  Difficulty difficulty = Difficulty::kStandard;
  // Image files shown to the policy, in prompt placeholder order.
  std::vector<std::string> images;
  // Textual graph payload for graph tasks; empty for vision tasks.
  std::string graph_context;
  std::string prompt;
  // Present when the answer space is finite and small enough to enumerate.
  std::optional<std::vector<std::string>> answer_space;
  // Canonical answer. Absent in public manifests.
  std::optional<std::string> target;
  // Salted SHA-256 of the target, written in place of it when hidden.
  std::optional<std::string> target_hash;
  SeedSpec seed;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

inline constexpr std::string_view kImagePlaceholder = "<image>";

std::size_t count_image_placeholders(std::string_view prompt);

// Hex digest over (task, difficulty, seed, target), truncated to 32 chars.
std::string episode_id(Task task, Difficulty difficulty, const SeedSpec& seed,
                       std::string_view target);

// Salted target digest stored in public manifests.
std::string target_digest(std::string_view salt, std::string_view target);

// Checks record invariants; the message names the episode id.
void validate(const EpisodeRecord& record);

}  // namespace pretextrl

#endif  // PRETEXTRL_EPISODE_HPP_
