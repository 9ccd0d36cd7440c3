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

#ifndef PRETEXTRL_VISION_TASKS_HPP_
#define PRETEXTRL_VISION_TASKS_HPP_

#include <span>
#include <string>
#include <vector>

#include "pretextrl/episode.hpp"
#include "pretextrl/image.hpp"
#include "pretextrl/permutation.hpp"
#include "pretextrl/seed.hpp"

namespace pretextrl {

// Identity and file naming for one generated episode.
struct EpisodeContext {
  SeedSpec seed;
  // Image refs are "<image_dir>/<id>_<k><image_ext>".
  std::string image_dir = "images";
  std::string image_ext = ".png";
};

// A record plus the corrupted images its refs point to.
struct GeneratedEpisode {
  EpisodeRecord record;
  std::vector<RasterImage> images;
  // Contrastive only: number of augmentations applied to each view.
  std::vector<int> augmentations_applied;
};

// Source image with a stable corpus identity.
struct SourceImage {
  std::string id;
  const RasterImage* image;
};

GeneratedEpisode make_rotation_episode(const RasterImage& img, const DifficultyPreset& p,
                                       SeedStream& rng, const EpisodeContext& ctx);
// Deterministic core: the angle is given.
GeneratedEpisode rotation_with_angle(const RasterImage& img, const DifficultyPreset& p,
                                     int angle, const EpisodeContext& ctx);

GeneratedEpisode make_jigsaw_episode(const RasterImage& img, const DifficultyPreset& p,
                                     SeedStream& rng, const EpisodeContext& ctx);
// presentation.order()[j] is the 1-based original cell shown at position j.
// The target is its inverse: target[k] is the presented patch that belongs
// at restored slot k.
GeneratedEpisode jigsaw_with_presentation(const RasterImage& img,
                                          const DifficultyPreset& p,
                                          const PermutationCode& presentation,
                                          const EpisodeContext& ctx);

// Positive when a and b share an id; `positive` states what the caller
// expects and a mismatch is a ValidationError.
GeneratedEpisode make_contrastive_episode(const SourceImage& a, const SourceImage& b,
                                          bool positive, const DifficultyPreset& p,
                                          SeedStream& rng, const EpisodeContext& ctx);

// The five contrastive augmentations in application order, parameterized by
// the preset's crop scale.
std::vector<AugmentationKind> contrastive_augmentations(const DifficultyPreset& p);

GeneratedEpisode make_position_episode(const RasterImage& img, const DifficultyPreset& p,
                                       SeedStream& rng, const EpisodeContext& ctx);
GeneratedEpisode position_with_cell(const RasterImage& img, const DifficultyPreset& p,
                                    int row, int col, SeedStream& rng,
                                    const EpisodeContext& ctx);

// Places presented[answer[k] - 1] at restored slot k and composes the grid.
RasterImage reassemble_jigsaw(std::span<const RasterImage> presented,
                              const PermutationCode& answer);

std::vector<std::string> position_answer_space(int n);
// All (n*n)! orders for n == 2, indexed by Lehmer rank; empty otherwise.
std::vector<std::string> jigsaw_answer_space(int n);

}  // namespace pretextrl

#endif  // PRETEXTRL_VISION_TASKS_HPP_
