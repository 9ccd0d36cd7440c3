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

#include "pretextrl/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "pretextrl/answers.hpp"
#include "pretextrl/dataset.hpp"
#include "pretextrl/graph_tasks.hpp"
#include "pretextrl/grpo.hpp"
#include "pretextrl/manifest.hpp"
#include "pretextrl/permutation.hpp"
#include "pretextrl/prompts.hpp"
#include "pretextrl/text.hpp"
#include "pretextrl/toy_env.hpp"
#include "pretextrl/vision_tasks.hpp"

namespace pretextrl {
namespace {

constexpr std::size_t kMaxMessages = 5;

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++result_.checks;
    if (ok) return;
    ++result_.failures;
    if (result_.messages.size() < kMaxMessages) result_.messages.push_back(what);
  }

  // Runs `body`, turning an escaped exception into one failed check.
  template <typename Fn>
  SuiteResult run(Fn&& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      check(false, std::string("exception: ") + e.what());
    }
    return result_;
  }

 private:
  SuiteResult result_;
};

RasterImage random_image(int w, int h, SeedStream& rng) {
  RasterImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.set(x, y, {static_cast<std::uint8_t>(rng.uniform_index(256)),
                     static_cast<std::uint8_t>(rng.uniform_index(256)),
                     static_cast<std::uint8_t>(rng.uniform_index(256))});
    }
  }
  return img;
}

PermutationCode random_permutation(int n, SeedStream& rng) {
  std::vector<int> order(static_cast<std::size_t>(n * n));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i) + 1;
  rng.shuffle(order);
  return PermutationCode(order, n);
}

EpisodeContext context_for(std::uint64_t seed, std::uint64_t index) {
  return EpisodeContext{SeedSpec{seed, index}};
}

void seed_suite(Suite& s, const SelftestOptions& o) {
  for (int it = 0; it < o.iterations; ++it) {
    SeedStream a = derive_stream({o.seed, static_cast<std::uint64_t>(it)});
    SeedStream b = derive_stream({o.seed, static_cast<std::uint64_t>(it)});
    bool same = true;
    for (int k = 0; k < 64; ++k) same &= a.next_u64() == b.next_u64();
    s.check(same, "stream " + std::to_string(it) + " is not reproducible");
    std::vector<int> v(20);
    for (int k = 0; k < 20; ++k) v[k] = k;
    a.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    bool perm = true;
    for (int k = 0; k < 20; ++k) perm &= sorted[k] == k;
    s.check(perm, "shuffle lost or duplicated an element");
  }
}

void imaging_suite(Suite& s, const SelftestOptions& o) {
  SeedStream rng = derive_stream({o.seed, 1});
  for (int it = 0; it < o.iterations; ++it) {
    const int w = 5 + static_cast<int>(rng.uniform_index(20));
    const int h = 5 + static_cast<int>(rng.uniform_index(20));
    const RasterImage img = random_image(w, h, rng);
    RasterImage r = img;
    for (int k = 0; k < 4; ++k) r = rotate_quarter(r, 1);
    s.check(r == img, "rotate_quarter^4 is not the identity");
    s.check(rotate_degrees(img, 90) == rotate_quarter(img, 1), "90 degrees != one quarter turn");
    for (int n : {2, 3, 5}) {
      const auto cells = partition_grid(img, n);
      const RasterImage composed = compose_grid(cells, n);
      const RasterImage expected = crop(img, 0, 0, (w / n) * n, (h / n) * n);
      s.check(composed == expected,
              "partition/compose round trip failed for n=" + std::to_string(n));
    }
  }
}

void permutation_suite(Suite& s, const SelftestOptions& o) {
  SeedStream rng = derive_stream({o.seed, 2});
  for (int n : {2, 3, 5}) {
    for (int it = 0; it < o.iterations; ++it) {
      const PermutationCode p = random_permutation(n, rng);
      const uint128 rank = perm_encode(p);
      s.check(rank < factorial(n * n), "rank out of range");
      s.check(perm_decode(rank, n) == p, "decode(encode(p)) != p for " + p.to_string());
      const PermutationCode inv = p.inverse();
      bool ok = true;
      for (int k = 0; k < n * n; ++k) ok &= p.order()[inv.order()[k] - 1] == k + 1;
      s.check(ok, "inverse is not a two-sided inverse for " + p.to_string());
    }
  }
  for (uint128 r = 0; r < 24; ++r) {
    s.check(perm_encode(perm_decode(r, 2)) == r, "n=2 rank " + to_decimal(r) + " round trip");
  }
}

void jigsaw_suite(Suite& s, const SelftestOptions& o) {
  SeedStream rng = derive_stream({o.seed, 3});
  auto check_one = [&](const RasterImage& img, const PermutationCode& presentation,
                       const DifficultyPreset& p, std::uint64_t index) {
    const GeneratedEpisode g = jigsaw_with_presentation(img, p, presentation,
                                                        context_for(o.seed, index));
    PermutationCode answer = PermutationCode::parse(*g.record.target, p.grid_order);
    if (o.corrupt_jigsaw_target) {
      std::vector<int> order = answer.order();
      std::swap(order[0], order[1]);
      answer = PermutationCode(order, p.grid_order);
    }
    const int n = p.grid_order;
    const RasterImage expected =
        crop(img, 0, 0, (img.width() / n) * n, (img.height() / n) * n);
    s.check(reassemble_jigsaw(g.images, answer) == expected,
            "reassembling presentation " + presentation.to_string() + " with target " +
                answer.to_string() + " does not restore the image");
  };
  // Exhaustive over the 24 orders of the 2x2 grid.
  const DifficultyPreset standard = preset(Difficulty::kStandard);
  const RasterImage base = random_image(16, 12, rng);
  for (uint128 r = 0; r < 24; ++r) {
    check_one(base, perm_decode(r, 2), standard, static_cast<std::uint64_t>(r));
  }
  for (Difficulty d : {Difficulty::kHard, Difficulty::kXHard}) {
    const DifficultyPreset p = preset(d);
    for (int it = 0; it < o.iterations; ++it) {
      const RasterImage img = random_image(20 + it % 7, 20 + it % 5, rng);
      check_one(img, random_permutation(p.grid_order, rng), p,
                static_cast<std::uint64_t>(it));
    }
  }
}

void vision_episode_suite(Suite& s, const SelftestOptions& o) {
  SeedStream rng = derive_stream({o.seed, 4});
  for (Difficulty d : {Difficulty::kStandard, Difficulty::kHard, Difficulty::kXHard}) {
    const DifficultyPreset p = preset(d);
    for (int it = 0; it < o.iterations; ++it) {
      const RasterImage img = random_image(24, 20, rng);
      const auto ctx = context_for(o.seed, static_cast<std::uint64_t>(it));
      const GeneratedEpisode rot = make_rotation_episode(img, p, rng, ctx);
      const int angle = std::stoi(*rot.record.target);
      s.check(angle % p.rotation_step == 0 && angle >= 0 && angle < 360,
              "rotation angle " + *rot.record.target + " off the lattice");
      if (angle % 90 == 0) {
        s.check(rotate_quarter(rot.images[1], (4 - angle / 90) % 4) == img,
                "rotating back by " + *rot.record.target + " does not restore the image");
      }
      const GeneratedEpisode pos = make_position_episode(img, p, rng, ctx);
      const std::string& t = *pos.record.target;
      const auto slash = t.find('/');
      const int row = std::stoi(t.substr(0, slash));
      const int col = std::stoi(t.substr(slash + 1));
      s.check(pos.images[1] == extract_cell(img, p.grid_order, row, col),
              "position patch does not match cell " + t);
      for (const GeneratedEpisode* g : {&rot, &pos}) {
        bool valid = true;
        try {
          validate(g->record);
        } catch (const ValidationError&) {
          valid = false;
        }
        s.check(valid, "generated record " + g->record.id + " fails validation");
      }
    }
  }
}

void answers_suite(Suite& s, const SelftestOptions&) {
  for (Task task : {Task::kRotation, Task::kJigsaw, Task::kContrastive, Task::kPosition,
                    Task::kLink}) {
    ToyEnv env(task, Difficulty::kStandard, 0.0, FeatureMode::kOracle);
    const int k = env.num_actions();
    for (int truth = 0; truth < k; ++truth) {
      BanditEpisode ep{std::to_string(truth), Eigen::VectorXd::Zero(env.num_features())};
      for (int a = 0; a < k; ++a) {
        s.check(env.reward(ep, a) == (a == truth ? 1.0 : 0.0),
                std::string(task_name(task)) + ": reward matrix is not the identity");
      }
    }
  }
  EpisodeRecord r;
  r.id = "selftest";
  r.task = Task::kRotation;
  r.prompt = rotation_prompt();
  r.images = {"a.png", "b.png"};
  r.answer_space = rotation_answer_space(90);
  r.target = "270";
  s.check(verify(r, render_answer("270")).reward == 1, "golden rotation answer rejected");
  s.check(verify(r, render_answer(" 270 degrees ")).reward == 1,
          "decorated rotation answer rejected");
  s.check(verify(r, "<answer>270</answer>").reward == 0, "missing think block accepted");
  s.check(verify(r, render_answer("270") + " extra").reward == 0, "trailing text accepted");
  s.check(verify(r, render_answer("45")).reason == RewardReason::kOutOfSpace,
          "off-lattice answer not flagged out of space");
}

void manifest_suite(Suite& s, const SelftestOptions& o) {
  const ImageCorpus corpus = synthetic_corpus(4, 24, 24, o.seed);
  GenConfig cfg;
  cfg.tasks = parse_task_selection("combination");
  cfg.count = 40;
  cfg.seed = o.seed;
  const auto episodes = generate_vision_episodes(corpus, cfg);
  const auto counts = count_by_task(episodes);
  for (Task t : kVisionTasks) {
    const auto it = counts.find(std::string(task_name(t)));
    s.check(it != counts.end() && it->second == 10, "combination split is uneven");
  }
  for (const auto& g : episodes) {
    s.check(from_json_line(to_json_line(g.record)) == g.record,
            "JSON round trip changed " + g.record.id);
    s.check(verify(g.record, render_answer(*g.record.target)).reward == 1,
            "golden completion rejected for " + g.record.id);
  }
  const auto dir = std::filesystem::temp_directory_path() /
                   ("pretextrl_selftest_" + std::to_string(o.seed));
  std::filesystem::create_directories(dir);
  std::vector<EpisodeRecord> records;
  for (const auto& g : episodes) records.push_back(g.record);
  ManifestWriteOptions opts;
  opts.answers_path = answers_path_for(dir / "m.jsonl");
  write_manifest(records, dir / "m.jsonl", opts);
  auto loaded = read_manifest(dir / "m.jsonl");
  bool hidden = std::all_of(loaded.begin(), loaded.end(), [](const EpisodeRecord& e) {
    return !e.target && e.target_hash;
  });
  s.check(hidden, "hidden manifest exposes a target");
  attach_answers(loaded, read_answers(opts.answers_path));
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    s.check(loaded[i].target == records[i].target, "answers did not reattach for " +
                                                       records[i].id);
  }
  std::filesystem::remove_all(dir);
}

void graph_suite(Suite& s, const SelftestOptions& o) {
  const TextAttributedGraph g = synthetic_graph(12, 20, o.seed);
  const DifficultyPreset p = preset(Difficulty::kStandard);
  const GraphTaskConfig cfg;
  SeedStream rng = derive_stream({o.seed, 5});
  for (std::size_t u = 0; u < g.size(); ++u) {
    const std::size_t deg = g.neighbors(u).size();
    if (deg == 0 || g.size() - 1 - deg < deg) continue;
    const std::string& id = g.nodes()[u].id;
    const auto ep = neighbor_for_node(g, id, p, cfg, rng, context_for(o.seed, u));
    std::vector<std::string> expected;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (v != u && g.has_edge(u, v)) expected.push_back(g.nodes()[v].id);
    }
    std::sort(expected.begin(), expected.end());
    s.check(*ep.record.target == join(expected, ","), "neighbor target for " + id);
    s.check(verify(ep.record, render_answer(*ep.record.target)).reward == 1,
            "golden neighbor answer rejected for " + id);
  }
  for (int it = 0; it < o.iterations; ++it) {
    const std::string& text = g.nodes()[static_cast<std::size_t>(it) % g.size()].text;
    const MaskedText m = mask_tokens(text, cfg.mask_fraction, rng);
    s.check(canonical_text(reinsert_masked(m.masked, m.target)) == canonical_text(text),
            "mask reinsertion does not reproduce the text");
    const auto link = make_link_episode(g, p, cfg, rng,
                                        context_for(o.seed, static_cast<std::uint64_t>(it)));
    const auto& ctx = link.record.graph_context;
    const auto at = ctx.rfind("Node pair: ");
    const auto pair = split_whitespace(ctx.substr(at + 11));
    const std::string a = pair.at(0).substr(0, pair.at(0).size() - 1);
    const bool edge = g.has_edge(g.index_of(a), g.index_of(pair.at(1)));
    s.check(*link.record.target == (edge ? "yes" : "no"), "link label disagrees with graph");
  }
}

void grpo_suite(Suite& s, const SelftestOptions& o) {
  SeedStream rng = derive_stream({o.seed, 6});
  for (int it = 0; it < o.iterations; ++it) {
    const int k = 2 + static_cast<int>(rng.uniform_index(5));
    const int f = 1 + static_cast<int>(rng.uniform_index(4));
    Eigen::MatrixXd theta0(k, f), theta(k, f);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < f; ++j) {
        theta0(i, j) = rng.uniform(-1.0, 1.0);
        theta(i, j) = theta0(i, j) + rng.uniform(-0.05, 0.05);
      }
    }
    const CategoricalPolicy base(theta0);
    const ReferencePolicy ref(base);
    CategoricalPolicy policy(theta);
    GrpoConfig cfg;
    cfg.entropy_coeff = 0.05;
    RolloutGroup group;
    group.features = Eigen::VectorXd(f);
    for (int j = 0; j < f; ++j) group.features(j) = rng.uniform(-1.0, 1.0);
    const Eigen::VectorXd old = base.probabilities(group.features);
    for (int g = 0; g < cfg.group_size; ++g) {
      const int a = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(k)));
      group.actions.push_back(a);
      group.old_probs.push_back(old(a));
      group.rewards.push_back(rng.bernoulli(0.5) ? 1.0 : 0.0);
    }
    group.advantages = compute_advantages(group.rewards, cfg.std_floor);
    double sum = 0.0;
    for (double adv : group.advantages) sum += adv;
    s.check(std::abs(sum) < 1e-9, "advantages do not sum to zero");
    s.check(kl_categorical(old, ref.probabilities(group.features)) == 0.0,
            "KL to the reference is nonzero at the reference");
    const Eigen::MatrixXd analytic = gradient(group, policy, ref, cfg);
    const double h = 1e-6;
    double max_err = 0.0;
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < f; ++j) {
        CategoricalPolicy plus(theta), minus(theta);
        plus.mutable_theta()(i, j) += h;
        minus.mutable_theta()(i, j) -= h;
        const double fd = (surrogate_objective(group, plus, ref, cfg) -
                           surrogate_objective(group, minus, ref, cfg)) /
                          (2 * h);
        const double scale = std::max(1e-3, std::abs(fd) + std::abs(analytic(i, j)));
        max_err = std::max(max_err, std::abs(fd - analytic(i, j)) / scale);
      }
    }
    s.check(max_err < 1e-4, "gradient disagrees with finite differences");
  }
}

}  // namespace

bool SelftestReport::passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult& r) { return r.failures == 0; });
}

SelftestReport run_selftest(const SelftestOptions& options) {
  using SuiteFn = void (*)(Suite&, const SelftestOptions&);
  const std::pair<const char*, SuiteFn> suites[] = {
      {"seed", seed_suite},
      {"imaging", imaging_suite},
      {"permutation", permutation_suite},
      {"jigsaw_reconstruction", jigsaw_suite},
      {"vision_episodes", vision_episode_suite},
      {"answers", answers_suite},
      {"manifest", manifest_suite},
      {"graph_tasks", graph_suite},
      {"grpo", grpo_suite},
  };
  SelftestReport report;
  for (const auto& [name, fn] : suites) {
    report.suites.push_back(Suite(name).run([&](Suite& s) { fn(s, options); }));
  }
  return report;
}

std::string format_report(const SelftestReport& report) {
  std::ostringstream out;
  for (const auto& r : report.suites) {
    out << (r.failures == 0 ? "PASS " : "FAIL ") << r.name << " checks=" << r.checks
        << " failures=" << r.failures << "\n";
    for (const auto& m : r.messages) out << "  " << r.name << ": " << m << "\n";
  }
  out << (report.passed() ? "selftest passed" : "selftest FAILED") << "\n";
  return out.str();
}

}  // namespace pretextrl
