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

#ifndef PRETEXTRL_COMMANDS_HPP_
#define PRETEXTRL_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include "pretextrl/dataset.hpp"
#include "pretextrl/grpo.hpp"
#include "pretextrl/toy_env.hpp"

namespace pretextrl {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

struct GenOptions {
  // Image directory, or a directory with edges.tsv and nodes.tsv for graph
  // tasks.
  std::filesystem::path corpus;
  std::string task = "combination";
  std::string difficulty = "standard";
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::filesystem::path out;
  unsigned workers = 1;
  bool reveal_targets = false;
  bool augment_position_patch = false;
  GraphTaskConfig graph;
};

struct VerifyOptions {
  std::filesystem::path manifest;
  std::filesystem::path answers;  // empty: manifest reveals targets
  std::filesystem::path completions;
  std::filesystem::path results;  // empty: <completions>.results.jsonl
  unsigned workers = 1;
};

struct TrainToyOptions {
  std::string task = "rotation";
  std::string difficulty = "standard";
  std::string features = "oracle";  // or "constant"
  int steps = 500;
  std::uint64_t seed = 0;
  double noise = 0.0;
  GrpoConfig grpo;
  int eval_episodes = 2000;
  std::filesystem::path out;
};

struct TrainToyResult {
  TrainingLog log;
  double final_expected_reward = 0.0;
  double bayes_optimal_reward = 0.0;
};

struct SynthCorpusOptions {
  std::filesystem::path out;
  std::size_t count = 16;
  int size = 48;
  std::uint64_t seed = 0;
  // Also writes edges.tsv / nodes.tsv with this many nodes; 0 skips.
  std::size_t graph_nodes = 0;
  std::size_t graph_edges = 0;
};

// Maps exceptions escaping a subcommand to an exit code, printing the
// message to `err`.
int run_guarded(std::ostream& err, const std::function<int()>& body);

int cmd_gen(const GenOptions& opt, std::ostream& out);
// Exit 0 whenever every row parsed; unknown ids are reported per row.
int cmd_verify(const VerifyOptions& opt, std::ostream& out);
TrainToyResult train_toy(const TrainToyOptions& opt);
int cmd_train_toy(const TrainToyOptions& opt, std::ostream& out);
int cmd_synth_corpus(const SynthCorpusOptions& opt, std::ostream& out);

}  // namespace pretextrl

#endif  // PRETEXTRL_COMMANDS_HPP_
