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

#include "pretextrl/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "pretextrl/error.hpp"

namespace pretextrl {

CategoricalPolicy::CategoricalPolicy(int num_actions, int num_features)
    : theta_(Eigen::MatrixXd::Zero(num_actions, num_features)) {
  if (num_actions < 1 || num_features < 1) {
    throw ValidationError("policy: need at least one action and one feature");
  }
}

CategoricalPolicy::CategoricalPolicy(Eigen::MatrixXd theta) : theta_(std::move(theta)) {
  if (theta_.rows() < 1 || theta_.cols() < 1) {
    throw ValidationError("policy: need at least one action and one feature");
  }
}

Eigen::VectorXd CategoricalPolicy::probabilities(const Eigen::VectorXd& features) const {
  if (features.size() != theta_.cols()) {
    throw ValidationError("policy: feature dimension mismatch");
  }
  Eigen::VectorXd z = theta_ * features;
  z.array() -= z.maxCoeff();
  Eigen::VectorXd p = z.array().exp();
  p /= p.sum();
  return p;
}

void GrpoConfig::validate() const {
  if (group_size < 2) throw ValidationError("grpo: group size must be >= 2");
  if (!(kl_coeff >= 0.0)) throw ValidationError("grpo: kl coefficient must be >= 0");
  if (!(clip > 0.0 && clip < 1.0)) throw ValidationError("grpo: clip must lie in (0,1)");
  if (!(std_floor >= 0.0)) throw ValidationError("grpo: std floor must be >= 0");
  if (groups_per_step < 1) throw ValidationError("grpo: groups per step must be >= 1");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw ValidationError("grpo: momentum must lie in [0,1)");
  }
}

std::vector<double> compute_advantages(std::span<const double> rewards, double std_floor) {
  const std::size_t g = rewards.size();
  std::vector<double> adv(g, 0.0);
  if (g == 0) return adv;
  if (std::all_of(rewards.begin(), rewards.end(),
                  [&](double r) { return r == rewards[0]; })) {
    return adv;
  }
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= static_cast<double>(g);
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double sd = std::sqrt(var / static_cast<double>(g));
  for (std::size_t i = 0; i < g; ++i) adv[i] = (rewards[i] - mean) / (sd + std_floor);
  return adv;
}

double kl_categorical(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size()) throw ValidationError("kl: dimension mismatch");
  double kl = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    if (q[k] <= 0.0) throw ValidationError("kl: q has zero mass where p is positive");
    kl += p[k] * (std::log(p[k]) - std::log(q[k]));
  }
  return std::max(kl, 0.0);
}

double entropy(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) h -= p[k] * std::log(p[k]);
  }
  return h;
}

namespace {

double clip_ratio(double rho, double eps) { return std::clamp(rho, 1.0 - eps, 1.0 + eps); }

void check_group(const RolloutGroup& g) {
  const std::size_t n = g.actions.size();
  if (n == 0 || g.old_probs.size() != n || g.advantages.size() != n) {
    throw ValidationError("grpo: malformed rollout group");
  }
}

}  // namespace

double surrogate_objective(const RolloutGroup& group, const CategoricalPolicy& policy,
                           const ReferencePolicy& ref, const GrpoConfig& cfg) {
  check_group(group);
  const Eigen::VectorXd p = policy.probabilities(group.features);
  const Eigen::VectorXd q = ref.probabilities(group.features);
  double surrogate = 0.0;
  for (std::size_t i = 0; i < group.actions.size(); ++i) {
    const double rho = p[group.actions[i]] / group.old_probs[i];
    const double a = group.advantages[i];
    surrogate += std::min(rho * a, clip_ratio(rho, cfg.clip) * a);
  }
  surrogate /= static_cast<double>(group.actions.size());
  return surrogate - cfg.kl_coeff * kl_categorical(p, q) + cfg.entropy_coeff * entropy(p);
}

Eigen::MatrixXd gradient(const RolloutGroup& group, const CategoricalPolicy& policy,
                         const ReferencePolicy& ref, const GrpoConfig& cfg) {
  check_group(group);
  const Eigen::VectorXd p = policy.probabilities(group.features);
  const Eigen::VectorXd q = ref.probabilities(group.features);
  const Eigen::Index k = p.size();

  // Gradient with respect to the logits, then chain through theta * phi.
  Eigen::VectorXd dz = Eigen::VectorXd::Zero(k);
  const double inv_g = 1.0 / static_cast<double>(group.actions.size());
  for (std::size_t i = 0; i < group.actions.size(); ++i) {
    const int act = group.actions[i];
    const double rho = p[act] / group.old_probs[i];
    const double a = group.advantages[i];
    if (a == 0.0) continue;
    // The unclipped branch is the active one iff rho*A <= clip(rho)*A.
    if (rho * a > clip_ratio(rho, cfg.clip) * a) continue;
    // d rho / dz = rho (e_act - p)
    dz -= (inv_g * a * rho) * p;
    dz[act] += inv_g * a * rho;
  }

  if (cfg.kl_coeff != 0.0) {
    const double kl = kl_categorical(p, q);
    for (Eigen::Index j = 0; j < k; ++j) {
      if (p[j] <= 0.0) continue;
      dz[j] -= cfg.kl_coeff * p[j] * (std::log(p[j]) - std::log(q[j]) - kl);
    }
  }
  if (cfg.entropy_coeff != 0.0) {
    const double h = entropy(p);
    for (Eigen::Index j = 0; j < k; ++j) {
      if (p[j] <= 0.0) continue;
      dz[j] -= cfg.entropy_coeff * p[j] * (std::log(p[j]) + h);
    }
  }
  return dz * group.features.transpose();
}

RolloutGroup sample_group(const CategoricalPolicy& policy, const BanditEpisode& episode,
                          const BanditEnv& env, int group_size, double std_floor,
                          SeedStream& rng) {
  if (group_size < 1) throw ValidationError("sample_group: group size must be >= 1");
  RolloutGroup g;
  g.episode_id = episode.id;
  g.features = episode.features;
  const Eigen::VectorXd p = policy.probabilities(episode.features);
  const std::span<const double> weights(p.data(), static_cast<std::size_t>(p.size()));
  for (int i = 0; i < group_size; ++i) {
    const int a = static_cast<int>(rng.categorical(weights));
    g.actions.push_back(a);
    g.old_probs.push_back(p[a]);
    g.rewards.push_back(env.reward(episode, a));
  }
  g.advantages = compute_advantages(g.rewards, std_floor);
  return g;
}

TrainingLog train(BanditEnv& env, CategoricalPolicy& policy, const GrpoConfig& cfg,
                  int steps, SeedStream& rng) {
  cfg.validate();
  if (env.num_actions() != policy.num_actions() ||
      env.num_features() != policy.num_features()) {
    throw ValidationError("train: policy shape does not match the environment");
  }
  const ReferencePolicy ref(policy);
  Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(policy.theta().rows(), policy.theta().cols());
  TrainingLog log;
  log.steps.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  for (int step = 0; step < steps; ++step) {
    std::vector<RolloutGroup> groups;
    groups.reserve(static_cast<std::size_t>(cfg.groups_per_step));
    for (int b = 0; b < cfg.groups_per_step; ++b) {
      const BanditEpisode episode = env.sample_episode(rng);
      groups.push_back(sample_group(policy, episode, env, cfg.group_size, cfg.std_floor, rng));
    }
    // Fixed reduction order over groups.
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(policy.theta().rows(), policy.theta().cols());
    StepLog entry;
    entry.step = step;
    double reward_sum = 0.0;
    std::size_t samples = 0;
    for (const auto& g : groups) {
      grad += gradient(g, policy, ref, cfg);
      entry.objective += surrogate_objective(g, policy, ref, cfg);
      entry.mean_kl += kl_categorical(policy.probabilities(g.features),
                                      ref.probabilities(g.features));
      for (double r : g.rewards) reward_sum += r;
      samples += g.rewards.size();
    }
    const double inv_b = 1.0 / static_cast<double>(groups.size());
    grad *= inv_b;
    entry.objective *= inv_b;
    entry.mean_kl *= inv_b;
    entry.mean_reward = reward_sum / static_cast<double>(samples);
    log.steps.push_back(entry);

    velocity = cfg.momentum * velocity + grad;
    policy.mutable_theta() += cfg.learning_rate * velocity;
    const double mean_abs = policy.theta().cwiseAbs().mean();
    if (!std::isfinite(mean_abs) || mean_abs > kDivergenceLimit) {
      throw TrainingDiverged("train: mean |theta| exceeded " +
                             std::to_string(kDivergenceLimit) + " at step " +
                             std::to_string(step));
    }
  }
  return log;
}

double expected_reward(const CategoricalPolicy& policy, BanditEnv& env, int episodes,
                       SeedStream& rng) {
  if (episodes < 1) throw ValidationError("expected_reward: need at least one episode");
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    const BanditEpisode ep = env.sample_episode(rng);
    const Eigen::VectorXd p = policy.probabilities(ep.features);
    for (int a = 0; a < env.num_actions(); ++a) total += p[a] * env.reward(ep, a);
  }
  return total / episodes;
}

double mean_kl(const CategoricalPolicy& policy, const ReferencePolicy& ref, BanditEnv& env,
               int episodes, SeedStream& rng) {
  if (episodes < 1) throw ValidationError("mean_kl: need at least one episode");
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    const BanditEpisode ep = env.sample_episode(rng);
    total += kl_categorical(policy.probabilities(ep.features), ref.probabilities(ep.features));
  }
  return total / episodes;
}

void write_training_log(const TrainingLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& s : log.steps) {
    nlohmann::ordered_json j;
    j["step"] = s.step;
    j["mean_reward"] = s.mean_reward;
    j["mean_kl"] = s.mean_kl;
    j["objective"] = s.objective;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

TrainingLog read_training_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  TrainingLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    log.steps.push_back({j.at("step").get<int>(), j.at("mean_reward").get<double>(),
                         j.at("mean_kl").get<double>(), j.at("objective").get<double>()});
  }
  return log;
}

void write_policy(const CategoricalPolicy& policy, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["num_actions"] = policy.num_actions();
  j["num_features"] = policy.num_features();
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(policy.num_actions()));
  for (int r = 0; r < policy.num_actions(); ++r) {
    for (int c = 0; c < policy.num_features(); ++c) rows[r].push_back(policy.theta()(r, c));
  }
  j["theta"] = rows;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

CategoricalPolicy read_policy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  const auto j = nlohmann::json::parse(in);
  const int k = j.at("num_actions").get<int>();
  const int f = j.at("num_features").get<int>();
  const auto rows = j.at("theta").get<std::vector<std::vector<double>>>();
  Eigen::MatrixXd theta(k, f);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < f; ++c) theta(r, c) = rows.at(r).at(c);
  }
  return CategoricalPolicy(std::move(theta));
}

}  // namespace pretextrl
