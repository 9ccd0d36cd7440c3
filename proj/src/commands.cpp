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

#include "pretextrl/commands.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>

#include "pretextrl/answers.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/graph.hpp"
#include "pretextrl/image_io.hpp"
#include "pretextrl/manifest.hpp"

namespace pretextrl {
namespace fs = std::filesystem;

int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

int cmd_gen(const GenOptions& opt, std::ostream& out) {
  if (opt.out.empty()) throw ValidationError("gen: --out is required");
  GenConfig cfg;
  cfg.tasks = parse_task_selection(opt.task);
  cfg.difficulty = parse_difficulty(opt.difficulty);
  cfg.count = opt.count;
  cfg.seed = opt.seed;
  cfg.workers = opt.workers;
  cfg.augment_position_patch = opt.augment_position_patch;
  cfg.graph = opt.graph;
  std::vector<GeneratedEpisode> episodes;
  if (is_vision_task(cfg.tasks.front())) {
    const ImageCorpus corpus = load_image_corpus(opt.corpus);
    if (corpus.images.empty()) {
      throw ValidationError("gen: no .png or .rgb images in " + opt.corpus.string());
    }
    episodes = generate_vision_episodes(corpus, cfg);
  } else {
    const TextAttributedGraph g =
        read_graph(opt.corpus / "edges.tsv", opt.corpus / "nodes.tsv");
    episodes = generate_graph_episodes(g, cfg);
  }
  const DatasetPaths paths = write_dataset(episodes, opt.out, opt.reveal_targets);
  out << "wrote " << episodes.size() << " episodes to " << paths.manifest.string() << "\n";
  if (!paths.answers.empty()) out << "answers: " << paths.answers.string() << "\n";
  for (const auto& [task, n] : count_by_task(episodes)) {
    out << "  " << std::left << std::setw(16) << task << n << "\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  auto episodes = read_manifest(opt.manifest);
  if (!opt.answers.empty()) attach_answers(episodes, read_answers(opt.answers));
  const auto completions = read_completions(opt.completions);
  const BatchReport report = batch_verify(episodes, completions, opt.workers);
  fs::path results = opt.results;
  if (results.empty()) results = fs::path(opt.completions.string() + ".results.jsonl");
  write_results(report, results);
  out << std::left << std::setw(16) << "task" << std::setw(12) << "difficulty"
      << std::right << std::setw(8) << "n" << std::setw(10) << "reward" << std::setw(10)
      << "mean" << "\n";
  const auto row = [&](const std::string& task, const std::string& diff,
                       const RewardStats& s) {
    out << std::left << std::setw(16) << task << std::setw(12) << diff << std::right
        << std::setw(8) << s.count << std::setw(10) << s.rewarded << std::setw(10)
        << std::fixed << std::setprecision(4) << s.mean() << "\n";
  };
  for (const auto& [key, stats] : report.by_group) row(key.first, key.second, stats);
  row("all", "", report.overall);
  if (report.unknown_ids > 0) out << "unknown ids: " << report.unknown_ids << "\n";
  out << "results: " << results.string() << "\n";
  return kExitOk;
}

TrainToyResult train_toy(const TrainToyOptions& opt) {
  FeatureMode mode;
  if (opt.features == "oracle") {
    mode = FeatureMode::kOracle;
  } else if (opt.features == "constant") {
    mode = FeatureMode::kConstant;
  } else {
    throw ValidationError("train-toy: features must be oracle or constant");
  }
  if (opt.steps < 0) throw ValidationError("train-toy: steps must be >= 0");
  if (opt.noise < 0.0 || opt.noise > 1.0) {
    throw ValidationError("train-toy: noise must lie in [0, 1]");
  }
  ToyEnv env(parse_task(opt.task), parse_difficulty(opt.difficulty), opt.noise, mode);
  CategoricalPolicy policy(env.num_actions(), env.num_features());
  SeedStream train_rng = derive_stream({opt.seed, 0});
  TrainToyResult result;
  result.log = train(env, policy, opt.grpo, opt.steps, train_rng);
  SeedStream eval_rng = derive_stream({opt.seed, 1});
  result.final_expected_reward = expected_reward(policy, env, opt.eval_episodes, eval_rng);
  result.bayes_optimal_reward = env.bayes_optimal_reward();
  if (!opt.out.empty()) {
    fs::create_directories(opt.out);
    write_training_log(result.log, opt.out / "train_log.jsonl");
    write_policy(policy, opt.out / "policy.json");
  }
  return result;
}

int cmd_train_toy(const TrainToyOptions& opt, std::ostream& out) {
  const TrainToyResult r = train_toy(opt);
  out << std::fixed << std::setprecision(4);
  const std::size_t n = r.log.steps.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 10);
  for (std::size_t i = 0; i < n; i += stride) {
    out << "step " << r.log.steps[i].step << " mean_reward " << r.log.steps[i].mean_reward
        << " kl " << r.log.steps[i].mean_kl << "\n";
  }
  out << "final expected reward " << r.final_expected_reward << " (bayes optimal "
      << r.bayes_optimal_reward << ")\n";
  return kExitOk;
}

int cmd_synth_corpus(const SynthCorpusOptions& opt, std::ostream& out) {
  if (opt.out.empty()) throw ValidationError("synth-corpus: --out is required");
  fs::create_directories(opt.out);
  const ImageCorpus corpus = synthetic_corpus(opt.count, opt.size, opt.size, opt.seed);
  for (std::size_t i = 0; i < corpus.images.size(); ++i) {
    write_png(corpus.images[i], opt.out / corpus.ids[i]);
  }
  out << "wrote " << corpus.images.size() << " images to " << opt.out.string() << "\n";
  if (opt.graph_nodes > 0) {
    const TextAttributedGraph g = synthetic_graph(opt.graph_nodes, opt.graph_edges, opt.seed);
    write_graph(g, opt.out / "edges.tsv", opt.out / "nodes.tsv");
    out << "wrote graph with " << g.size() << " nodes\n";
  }
  return kExitOk;
}

}  // namespace pretextrl
