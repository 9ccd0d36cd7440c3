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

#ifndef PRETEXTRL_TOY_ENV_HPP_
#define PRETEXTRL_TOY_ENV_HPP_

#include <memory>
#include <string>
#include <vector>

#include "pretextrl/episode.hpp"
#include "pretextrl/grpo.hpp"

namespace pretextrl {

enum class FeatureMode {
  // One-hot of the true answer, replaced by a uniformly chosen wrong answer
  // with probability `noise`.
  kOracle,
  // A single constant feature; the policy cannot tell episodes apart.
  kConstant,
};

// Bandit stand-in for a vision-language policy on a finite-answer task.
// Rewards come from the real verifier applied to a formatted completion of
// the chosen answer string.
class ToyEnv : public BanditEnv {
 public:
  ToyEnv(Task task, Difficulty difficulty, double noise, FeatureMode mode);

  int num_actions() const override { return static_cast<int>(answers_.size()); }
  int num_features() const override {
    return mode_ == FeatureMode::kOracle ? num_actions() : 1;
  }
  BanditEpisode sample_episode(SeedStream& rng) override;
  double reward(const BanditEpisode& episode, int action) const override;

  const std::vector<std::string>& answers() const { return answers_; }
  double noise() const { return noise_; }
  FeatureMode mode() const { return mode_; }
  // Reward of the best deterministic rule given the features, by
  // enumerating (true answer, observed feature) pairs.
  double bayes_optimal_reward() const;

 private:
  Task task_;
  Difficulty difficulty_;
  double noise_;
  FeatureMode mode_;
  std::vector<std::string> answers_;
  // Episode id -> record with its target, for verification.
  std::vector<EpisodeRecord> records_;
};

// The finite answer space of a vision task (or link prediction) at a
// difficulty. Throws ValidationError for tasks without one.
std::vector<std::string> finite_answer_space(Task task, Difficulty difficulty);

std::unique_ptr<ToyEnv> make_toy_env(Task task, double noise,
                                     FeatureMode mode = FeatureMode::kOracle,
                                     Difficulty difficulty = Difficulty::kStandard);

}  // namespace pretextrl

#endif  // PRETEXTRL_TOY_ENV_HPP_
