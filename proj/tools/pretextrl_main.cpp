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

// pretextrl command-line entry point.

#include <atomic>
#include <chrono>
#include <csignal>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "pretextrl/commands.hpp"
#include "pretextrl/selftest.hpp"
#include "pretextrl/service.hpp"

namespace {

std::atomic<bool> g_stop{false};

extern "C" void on_signal(int) { g_stop.store(true); }

struct ServeOptions {
  std::filesystem::path manifest;
  std::filesystem::path answers;
  std::string addr = "127.0.0.1:8080";
};

int cmd_serve(const ServeOptions& opt) {
  const pretextrl::EpisodeStore store = pretextrl::EpisodeStore::load(opt.manifest, opt.answers);
  pretextrl::VerifierServer server(store);
  const auto addr = pretextrl::parse_address(opt.addr);
  const int port = server.bind(addr);
  std::signal(SIGTERM, on_signal);
  std::signal(SIGINT, on_signal);
  std::jthread watcher([&server](std::stop_token st) {
    while (!g_stop.load() && !st.stop_requested()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    server.wait_until_ready();
    server.stop();
  });
  std::cout << "serving " << store.size() << " episodes on " << addr.host << ":" << port
            << std::endl;
  server.serve();
  watcher.request_stop();
  std::cout << "stopped" << std::endl;
  return pretextrl::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verifiable reward environments from self-supervised pretext tasks"};
  app.require_subcommand(1);

  pretextrl::GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate episodes, images and a manifest");
  g->add_option("--corpus", gen.corpus, "Image directory or graph directory")->required();
  g->add_option("--task", gen.task, "Task name or \"combination\"")->capture_default_str();
  g->add_option("--difficulty", gen.difficulty)
      ->check(CLI::IsMember({"standard", "hard", "xhard"}))
      ->capture_default_str();
  g->add_option("--count", gen.count)->required();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--out", gen.out)->required();
  g->add_option("--workers", gen.workers)->capture_default_str();
  g->add_flag("--reveal-targets", gen.reveal_targets, "Keep targets in the manifest");
  g->add_flag("--augment-position-patch", gen.augment_position_patch,
              "Augment the query patch of position episodes");
  g->add_option("--mask-fraction", gen.graph.mask_fraction)->capture_default_str();
  g->add_option("--hops", gen.graph.hops)->capture_default_str();
  g->add_option("--negatives", gen.graph.negatives, "0 means one per true neighbor")
      ->capture_default_str();

  pretextrl::VerifyOptions ver;
  auto* v = app.add_subcommand("verify", "Score completions against a manifest");
  v->add_option("--manifest", ver.manifest)->required();
  v->add_option("--answers", ver.answers, "Private answers file");
  v->add_option("--completions", ver.completions)->required();
  v->add_option("--results", ver.results);
  v->add_option("--workers", ver.workers)->capture_default_str();

  pretextrl::TrainToyOptions toy;
  auto* t = app.add_subcommand("train-toy", "GRPO on a toy bandit over a task's answer space");
  t->add_option("--task", toy.task)->capture_default_str();
  t->add_option("--difficulty", toy.difficulty)
      ->check(CLI::IsMember({"standard", "hard", "xhard"}))
      ->capture_default_str();
  t->add_option("--features", toy.features)
      ->check(CLI::IsMember({"oracle", "constant"}))
      ->capture_default_str();
  t->add_option("--steps", toy.steps)->capture_default_str();
  t->add_option("--seed", toy.seed)->capture_default_str();
  t->add_option("--noise", toy.noise)->capture_default_str();
  t->add_option("--group-size", toy.grpo.group_size)->capture_default_str();
  t->add_option("--kl-coeff", toy.grpo.kl_coeff)->capture_default_str();
  t->add_option("--entropy-coeff", toy.grpo.entropy_coeff)->capture_default_str();
  t->add_option("--clip", toy.grpo.clip)->capture_default_str();
  t->add_option("--lr", toy.grpo.learning_rate)->capture_default_str();
  t->add_option("--groups-per-step", toy.grpo.groups_per_step)->capture_default_str();
  t->add_option("--momentum", toy.grpo.momentum)->capture_default_str();
  t->add_option("--eval-episodes", toy.eval_episodes)->capture_default_str();
  t->add_option("--out", toy.out, "Directory for train_log.jsonl and policy.json");

  ServeOptions serve;
  auto* s = app.add_subcommand("serve", "Serve reward verification over HTTP");
  s->add_option("--manifest", serve.manifest)->required();
  s->add_option("--answers", serve.answers, "Private answers file");
  s->add_option("--addr", serve.addr)->capture_default_str();

  pretextrl::SelftestOptions st;
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suites");
  selftest->add_option("--seed", st.seed)->capture_default_str();
  selftest->add_option("--iterations", st.iterations)->capture_default_str();
  selftest->add_flag("--corrupt-jigsaw-target", st.corrupt_jigsaw_target,
                     "Plant a jigsaw target fault");

  pretextrl::SynthCorpusOptions synth;
  auto* sc = app.add_subcommand("synth-corpus", "Write a synthetic image and graph corpus");
  sc->add_option("--out", synth.out)->required();
  sc->add_option("--count", synth.count)->capture_default_str();
  sc->add_option("--size", synth.size)->capture_default_str();
  sc->add_option("--seed", synth.seed)->capture_default_str();
  sc->add_option("--graph-nodes", synth.graph_nodes)->capture_default_str();
  sc->add_option("--graph-edges", synth.graph_edges)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? pretextrl::kExitOk : pretextrl::kExitValidation;
  }

  return pretextrl::run_guarded(std::cerr, [&]() -> int {
    if (*g) return pretextrl::cmd_gen(gen, std::cout);
    if (*v) return pretextrl::cmd_verify(ver, std::cout);
    if (*t) return pretextrl::cmd_train_toy(toy, std::cout);
    if (*s) return cmd_serve(serve);
    if (*sc) return pretextrl::cmd_synth_corpus(synth, std::cout);
    const auto report = pretextrl::run_selftest(st);
    std::cout << pretextrl::format_report(report);
    return report.passed() ? pretextrl::kExitOk : pretextrl::kExitValidation;
  });
}
