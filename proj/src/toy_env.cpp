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

#include "pretextrl/toy_env.hpp"

#include <algorithm>

#include "pretextrl/answers.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/prompts.hpp"
#include "pretextrl/vision_tasks.hpp"

namespace pretextrl {

std::vector<std::string> finite_answer_space(Task task, Difficulty difficulty) {
  const DifficultyPreset p = preset(difficulty);
  switch (task) {
    case Task::kRotation: return rotation_answer_space(p.rotation_step);
    case Task::kJigsaw:
      if (p.grid_order != 2) {
        throw ValidationError("toy env: jigsaw answer space only enumerable for 2x2");
      }
      return jigsaw_answer_space(2);
    case Task::kContrastive: return {"positive", "negative"};
    case Task::kPosition: return position_answer_space(p.grid_order);
    case Task::kLink: return {"yes", "no"};
    case Task::kAttributeMask:
    case Task::kNeighbor: break;
  }
  throw ValidationError("toy env: task " + std::string(task_name(task)) +
                        " has no finite answer space");
}

ToyEnv::ToyEnv(Task task, Difficulty difficulty, double noise, FeatureMode mode)
    : task_(task),
      difficulty_(difficulty),
      noise_(noise),
      mode_(mode),
      answers_(finite_answer_space(task, difficulty)) {
  if (!(noise >= 0.0 && noise <= 1.0)) throw ValidationError("toy env: noise must be in [0,1]");
  if (answers_.size() < 2) throw ValidationError("toy env: need at least two answers");
  // One verifier record per true answer; episodes reference them by index.
  for (std::size_t i = 0; i < answers_.size(); ++i) {
    EpisodeRecord r;
    r.id = std::to_string(i);
    r.task = task_;
    r.difficulty = difficulty_;
    r.answer_space = answers_;
    r.target = answers_[i];
    records_.push_back(std::move(r));
  }
}

BanditEpisode ToyEnv::sample_episode(SeedStream& rng) {
  const std::size_t k = answers_.size();
  const std::size_t truth = rng.uniform_index(k);
  BanditEpisode e;
  e.id = std::to_string(truth);
  if (mode_ == FeatureMode::kConstant) {
    e.features = Eigen::VectorXd::Ones(1);
    return e;
  }
  std::size_t observed = truth;
  if (rng.bernoulli(noise_)) {
    observed = rng.uniform_index(k - 1);
    if (observed >= truth) ++observed;
  }
  e.features = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  e.features[static_cast<Eigen::Index>(observed)] = 1.0;
  return e;
}

double ToyEnv::reward(const BanditEpisode& episode, int action) const {
  const std::size_t truth = std::stoul(episode.id);
  if (action < 0 || static_cast<std::size_t>(action) >= answers_.size()) {
    throw ValidationError("toy env: action out of range");
  }
  return verify(records_.at(truth), render_answer(answers_[action])).reward;
}

double ToyEnv::bayes_optimal_reward() const {
  const std::size_t k = answers_.size();
  if (mode_ == FeatureMode::kConstant) return 1.0 / static_cast<double>(k);
  double total = 0.0;
  for (std::size_t observed = 0; observed < k; ++observed) {
    double best = 0.0;
    for (std::size_t truth = 0; truth < k; ++truth) {
      const double joint = (1.0 / k) * (truth == observed ? 1.0 - noise_
                                                          : noise_ / (k - 1));
      best = std::max(best, joint);
    }
    total += best;
  }
  return total;
}

std::unique_ptr<ToyEnv> make_toy_env(Task task, double noise, FeatureMode mode,
                                     Difficulty difficulty) {
  return std::make_unique<ToyEnv>(task, difficulty, noise, mode);
}

}  // namespace pretextrl
