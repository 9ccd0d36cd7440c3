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

#ifndef PRETEXTRL_GRPO_HPP_
#define PRETEXTRL_GRPO_HPP_

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pretextrl/seed.hpp"

namespace pretextrl {

// Softmax policy over K answers with logits theta * features.
class CategoricalPolicy {
 public:
  // theta = 0, the uniform policy.
  CategoricalPolicy(int num_actions, int num_features);
  explicit CategoricalPolicy(Eigen::MatrixXd theta);

  int num_actions() const { return static_cast<int>(theta_.rows()); }
  int num_features() const { return static_cast<int>(theta_.cols()); }
  const Eigen::MatrixXd& theta() const { return theta_; }
  Eigen::MatrixXd& mutable_theta() { return theta_; }

  Eigen::VectorXd probabilities(const Eigen::VectorXd& features) const;

 private:
  Eigen::MatrixXd theta_;
};

// Frozen snapshot of the policy at the start of training.
class ReferencePolicy {
 public:
  explicit ReferencePolicy(const CategoricalPolicy& policy) : policy_(policy) {}
  Eigen::VectorXd probabilities(const Eigen::VectorXd& features) const {
    return policy_.probabilities(features);
  }
  const Eigen::MatrixXd& theta() const { return policy_.theta(); }

 private:
  const CategoricalPolicy policy_;
};

struct GrpoConfig {
  int group_size = 5;
  double kl_coeff = 0.01;
  double entropy_coeff = 0.0;
  double clip = 0.2;
  double learning_rate = 1.0;
  double std_floor = 1e-6;
  // Groups sampled per parameter update; the gradient is their mean.
  int groups_per_step = 1;
  // Heavy-ball momentum. 0 is plain gradient ascent.
  double momentum = 0.0;

  // Throws ValidationError unless G >= 2, beta >= 0 and 0 < clip < 1.
  void validate() const;
};

struct RolloutGroup {
  std::string episode_id;
  Eigen::VectorXd features;
  std::vector<int> actions;
  // Sampling-time probability of each action.
  std::vector<double> old_probs;
  std::vector<double> rewards;
  std::vector<double> advantages;
};

// (r - mean) / (std + std_floor) with the population std; a constant
// reward vector yields all zeros.
std::vector<double> compute_advantages(std::span<const double> rewards, double std_floor);

// Sum p log(p/q). Throws ValidationError if q is zero where p is not.
double kl_categorical(const Eigen::VectorXd& p, const Eigen::VectorXd& q);
double entropy(const Eigen::VectorXd& p);

// (1/G) sum min(rho A, clip(rho) A) - beta KL(pi || pi_0) + c H(pi), with
// rho = pi(a)/pi_old(a) evaluated at the group's features.
double surrogate_objective(const RolloutGroup& group, const CategoricalPolicy& policy,
                           const ReferencePolicy& ref, const GrpoConfig& cfg);

// Analytic d(surrogate)/d(theta). On the clipped branch the sample
// contributes nothing.
Eigen::MatrixXd gradient(const RolloutGroup& group, const CategoricalPolicy& policy,
                         const ReferencePolicy& ref, const GrpoConfig& cfg);

// One decision per episode over a finite answer space.
struct BanditEpisode {
  std::string id;
  Eigen::VectorXd features;
};

class BanditEnv {
 public:
  virtual ~BanditEnv() = default;
  virtual int num_actions() const = 0;
  virtual int num_features() const = 0;
  virtual BanditEpisode sample_episode(SeedStream& rng) = 0;
  // Verified reward in {0,1} for answering `action` on the episode.
  virtual double reward(const BanditEpisode& episode, int action) const = 0;
};

RolloutGroup sample_group(const CategoricalPolicy& policy, const BanditEpisode& episode,
                          const BanditEnv& env, int group_size, double std_floor,
                          SeedStream& rng);

struct StepLog {
  int step = 0;
  double mean_reward = 0.0;
  double mean_kl = 0.0;
  double objective = 0.0;

  friend bool operator==(const StepLog&, const StepLog&) = default;
};

struct TrainingLog {
  std::vector<StepLog> steps;
  friend bool operator==(const TrainingLog&, const TrainingLog&) = default;
};

class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDivergenceLimit = 1e6;

// Gradient ascent on the surrogate, one update per step. Throws
// TrainingDiverged when mean |theta| exceeds kDivergenceLimit.
TrainingLog train(BanditEnv& env, CategoricalPolicy& policy, const GrpoConfig& cfg,
                  int steps, SeedStream& rng);

// Mean over fresh episodes of sum_a pi(a|features) * reward(a).
double expected_reward(const CategoricalPolicy& policy, BanditEnv& env, int episodes,
                       SeedStream& rng);

// Mean KL to the reference over fresh episodes.
double mean_kl(const CategoricalPolicy& policy, const ReferencePolicy& ref, BanditEnv& env,
               int episodes, SeedStream& rng);

// {step, mean_reward, mean_kl, objective} per line.
void write_training_log(const TrainingLog& log, const std::filesystem::path& path);
TrainingLog read_training_log(const std::filesystem::path& path);
void write_policy(const CategoricalPolicy& policy, const std::filesystem::path& path);
CategoricalPolicy read_policy(const std::filesystem::path& path);

}  // namespace pretextrl

#endif  // PRETEXTRL_GRPO_HPP_
