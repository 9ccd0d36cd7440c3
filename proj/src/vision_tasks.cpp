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

#include "pretextrl/vision_tasks.hpp"

#include "pretextrl/augment.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/prompts.hpp"

namespace pretextrl {
namespace {

void finalize(GeneratedEpisode& g, Task task, const DifficultyPreset& p,
              std::string target, const EpisodeContext& ctx) {
  EpisodeRecord& r = g.record;
  r.task = task;
  r.difficulty = p.name;
  r.seed = ctx.seed;
  r.id = episode_id(task, p.name, ctx.seed, target);
  r.target = std::move(target);
  r.prompt = render_prompt(r);
  r.images.clear();
  for (std::size_t k = 0; k < g.images.size(); ++k) {
    r.images.push_back(ctx.image_dir + "/" + r.id + "_" + std::to_string(k) +
                       ctx.image_ext);
  }
  validate(r);
}

}  // namespace

std::vector<std::string> position_answer_space(int n) {
  std::vector<std::string> out;
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) out.push_back(std::to_string(r) + "/" + std::to_string(c));
  }
  return out;
}

std::vector<std::string> jigsaw_answer_space(int n) {
  if (n != 2) return {};
  std::vector<std::string> out;
  const uint128 total = factorial(n * n);
  for (uint128 i = 0; i < total; ++i) out.push_back(perm_decode(i, n).to_string());
  return out;
}

GeneratedEpisode rotation_with_angle(const RasterImage& img, const DifficultyPreset& p,
                                     int angle, const EpisodeContext& ctx) {
  if (angle < 0 || angle >= 360 || angle % p.rotation_step != 0) {
    throw ValidationError("rotation: angle " + std::to_string(angle) +
                          " not on the preset lattice");
  }
  GeneratedEpisode g;
  g.images.push_back(img);
  g.images.push_back(rotate_degrees(img, angle));
  g.record.answer_space = rotation_answer_space(p.rotation_step);
  finalize(g, Task::kRotation, p, std::to_string(angle), ctx);
  return g;
}

GeneratedEpisode make_rotation_episode(const RasterImage& img, const DifficultyPreset& p,
                                       SeedStream& rng, const EpisodeContext& ctx) {
  const auto classes = static_cast<std::uint64_t>(360 / p.rotation_step);
  const int angle = static_cast<int>(rng.uniform_index(classes)) * p.rotation_step;
  return rotation_with_angle(img, p, angle, ctx);
}

GeneratedEpisode jigsaw_with_presentation(const RasterImage& img,
                                          const DifficultyPreset& p,
                                          const PermutationCode& presentation,
                                          const EpisodeContext& ctx) {
  const int n = p.grid_order;
  if (presentation.grid_order() != n) {
    throw ValidationError("jigsaw: presentation grid order does not match preset");
  }
  std::vector<RasterImage> cells = partition_grid(img, n);
  GeneratedEpisode g;
  g.images.reserve(cells.size());
  for (int original : presentation.order()) g.images.push_back(cells[original - 1]);
  if (n == 2) g.record.answer_space = jigsaw_answer_space(n);
  finalize(g, Task::kJigsaw, p, presentation.inverse().to_string(), ctx);
  return g;
}

GeneratedEpisode make_jigsaw_episode(const RasterImage& img, const DifficultyPreset& p,
                                     SeedStream& rng, const EpisodeContext& ctx) {
  const int n = p.grid_order;
  if (img.width() < n || img.height() < n) {
    throw ValidationError("jigsaw: image too small for grid order " + std::to_string(n));
  }
  const uint128 index = rng.uniform_index128(factorial(n * n));
  return jigsaw_with_presentation(img, p, perm_decode(index, n), ctx);
}

RasterImage reassemble_jigsaw(std::span<const RasterImage> presented,
                              const PermutationCode& answer) {
  const int n = answer.grid_order();
  if (presented.size() != static_cast<std::size_t>(n * n)) {
    throw ValidationError("jigsaw: expected " + std::to_string(n * n) + " patches");
  }
  std::vector<RasterImage> restored;
  restored.reserve(presented.size());
  for (int slot : answer.order()) restored.push_back(presented[slot - 1]);
  return compose_grid(restored, n);
}

std::vector<AugmentationKind> contrastive_augmentations(const DifficultyPreset& p) {
  RandomResizedCrop crop;
  crop.scale = p.crop_scale;
  return {crop, HorizontalFlip{}, ColorJitter{}, Grayscale{}, GaussianBlur{}};
}

GeneratedEpisode make_contrastive_episode(const SourceImage& a, const SourceImage& b,
                                          bool positive, const DifficultyPreset& p,
                                          SeedStream& rng, const EpisodeContext& ctx) {
  const bool same = a.id == b.id;
  if (!positive && same) {
    throw ValidationError("contrastive: negative pair requested with identical source id " +
                          a.id);
  }
  if (positive && !same) {
    throw ValidationError("contrastive: positive pair needs one source, got " + a.id +
                          " and " + b.id);
  }
  const auto augmentations = contrastive_augmentations(p);
  GeneratedEpisode g;
  for (const SourceImage* src : {&a, &b}) {
    RasterImage view = *src->image;
    int applied = 0;
    for (const auto& aug : augmentations) {
      if (rng.bernoulli(p.augmentation_probability)) {
        view = apply_augmentation(view, aug, rng);
        ++applied;
      }
    }
    g.images.push_back(std::move(view));
    g.augmentations_applied.push_back(applied);
  }
  g.record.answer_space = std::vector<std::string>{"positive", "negative"};
  finalize(g, Task::kContrastive, p, positive ? "positive" : "negative", ctx);
  return g;
}

GeneratedEpisode position_with_cell(const RasterImage& img, const DifficultyPreset& p,
                                    int row, int col, SeedStream& rng,
                                    const EpisodeContext& ctx) {
  const int n = p.grid_order;
  RasterImage patch = extract_cell(img, n, row, col);
  if (p.position_patch_augmentation) {
    const AugmentationKind kinds[] = {Grayscale{}, ColorJitter{}, Solarize{}};
    for (const auto& aug : kinds) {
      if (rng.bernoulli(p.position_patch_probability)) {
        patch = apply_augmentation(patch, aug, rng);
      }
    }
  }
  GeneratedEpisode g;
  g.images.push_back(img);
  g.images.push_back(std::move(patch));
  g.record.answer_space = position_answer_space(n);
  finalize(g, Task::kPosition, p, std::to_string(row) + "/" + std::to_string(col), ctx);
  return g;
}

GeneratedEpisode make_position_episode(const RasterImage& img, const DifficultyPreset& p,
                                       SeedStream& rng, const EpisodeContext& ctx) {
  const int n = p.grid_order;
  const int cell = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n) * n));
  return position_with_cell(img, p, cell / n + 1, cell % n + 1, rng, ctx);
}

}  // namespace pretextrl
