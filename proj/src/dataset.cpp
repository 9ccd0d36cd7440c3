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

#include "pretextrl/dataset.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "pretextrl/error.hpp"
#include "pretextrl/image_io.hpp"
#include "pretextrl/manifest.hpp"

namespace pretextrl {
namespace fs = std::filesystem;

namespace {

template <typename Fn>
std::vector<GeneratedEpisode> generate_indexed(std::size_t count, unsigned workers, Fn&& make) {
  std::vector<GeneratedEpisode> out(count);
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2 * static_cast<std::size_t>(workers)) {
    for (std::size_t i = 0; i < count; ++i) out[i] = make(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) out[i] = make(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void check_tasks(const GenConfig& cfg, bool vision) {
  if (cfg.tasks.empty()) throw ValidationError("gen: no task selected");
  for (Task t : cfg.tasks) {
    if (is_vision_task(t) != vision) {
      throw ValidationError("gen: task " + std::string(task_name(t)) +
                            (vision ? " needs a graph corpus" : " needs an image corpus"));
    }
  }
}

}  // namespace

ImageCorpus load_image_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("corpus is not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".png" || ext == ".rgb")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  ImageCorpus corpus;
  for (const auto& f : files) {
    corpus.ids.push_back(f.filename().string());
    corpus.images.push_back(read_image(f));
  }
  return corpus;
}

std::vector<Task> parse_task_selection(std::string_view name) {
  if (name == "combination") {
    return {std::begin(kVisionTasks), std::end(kVisionTasks)};
  }
  return {parse_task(name)};
}

std::vector<GeneratedEpisode> generate_vision_episodes(const ImageCorpus& corpus,
                                                       const GenConfig& cfg) {
  check_tasks(cfg, true);
  if (cfg.count > 0 && corpus.images.empty()) throw ValidationError("gen: empty corpus");
  DifficultyPreset p = preset(cfg.difficulty);
  p.position_patch_augmentation = cfg.augment_position_patch;
  const std::size_t n = corpus.images.size();
  const std::size_t ntasks = cfg.tasks.size();
  return generate_indexed(cfg.count, cfg.workers, [&](std::size_t i) {
    const SeedSpec seed{cfg.seed, i};
    SeedStream rng = derive_stream(seed);
    const EpisodeContext ctx{seed, cfg.image_dir, cfg.image_ext};
    const Task task = cfg.tasks[i % ntasks];
    const std::size_t src = rng.uniform_index(n);
    const RasterImage& img = corpus.images[src];
    switch (task) {
      case Task::kRotation: return make_rotation_episode(img, p, rng, ctx);
      case Task::kJigsaw: return make_jigsaw_episode(img, p, rng, ctx);
      case Task::kPosition: return make_position_episode(img, p, rng, ctx);
      case Task::kContrastive: {
        // Alternate labels by this task's ordinal so every prefix balances.
        const bool positive = (i / ntasks) % 2 == 0;
        const SourceImage a{corpus.ids[src], &img};
        if (positive) return make_contrastive_episode(a, a, true, p, rng, ctx);
        if (n < 2) throw ValidationError("gen: negative contrastive pairs need two images");
        std::size_t other = rng.uniform_index(n - 1);
        if (other >= src) ++other;
        const SourceImage b{corpus.ids[other], &corpus.images[other]};
        return make_contrastive_episode(a, b, false, p, rng, ctx);
      }
      default:
        throw ValidationError("gen: not a vision task");
    }
  });
}

std::vector<GeneratedEpisode> generate_graph_episodes(const TextAttributedGraph& graph,
                                                      const GenConfig& cfg) {
  check_tasks(cfg, false);
  if (cfg.count > 0 && graph.size() == 0) throw ValidationError("gen: empty graph");
  const DifficultyPreset p = preset(cfg.difficulty);
  const std::size_t ntasks = cfg.tasks.size();
  return generate_indexed(cfg.count, cfg.workers, [&](std::size_t i) {
    const SeedSpec seed{cfg.seed, i};
    SeedStream rng = derive_stream(seed);
    const EpisodeContext ctx{seed, cfg.image_dir, cfg.image_ext};
    switch (cfg.tasks[i % ntasks]) {
      case Task::kAttributeMask:
        return make_attribute_mask_episode(graph, p, cfg.graph, rng, ctx);
      case Task::kNeighbor: return make_neighbor_episode(graph, p, cfg.graph, rng, ctx);
      case Task::kLink: return make_link_episode(graph, p, cfg.graph, rng, ctx);
      default:
        throw ValidationError("gen: not a graph task");
    }
  });
}

std::map<std::string, std::size_t> count_by_task(std::span<const GeneratedEpisode> episodes) {
  std::map<std::string, std::size_t> counts;
  for (const auto& e : episodes) ++counts[std::string(task_name(e.record.task))];
  return counts;
}

DatasetPaths write_dataset(std::span<const GeneratedEpisode> episodes, const fs::path& out_dir,
                           bool reveal_targets) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  std::set<fs::path> dirs;
  for (const auto& e : episodes) {
    for (const auto& ref : e.record.images) dirs.insert((out_dir / ref).parent_path());
  }
  for (const auto& d : dirs) {
    fs::create_directories(d, ec);
    if (ec) throw IoError("cannot create " + d.string() + ": " + ec.message());
  }
  std::vector<EpisodeRecord> records;
  records.reserve(episodes.size());
  for (const auto& e : episodes) {
    for (std::size_t k = 0; k < e.images.size(); ++k) {
      write_image(e.images[k], out_dir / e.record.images[k]);
    }
    records.push_back(e.record);
  }
  DatasetPaths paths{out_dir / "manifest.jsonl", {}};
  ManifestWriteOptions opts;
  opts.reveal_targets = reveal_targets;
  if (!reveal_targets) {
    paths.answers = answers_path_for(paths.manifest);
    opts.answers_path = paths.answers;
  }
  write_manifest(records, paths.manifest, opts);
  return paths;
}

ImageCorpus synthetic_corpus(std::size_t count, int width, int height, std::uint64_t seed) {
  ImageCorpus corpus;
  for (std::size_t i = 0; i < count; ++i) {
    SeedStream rng = derive_stream({seed, i});
    // Bilinear blend of four random corner colors plus per-pixel noise, so
    // cells and rotations are distinguishable.
    double corners[4][3];
    for (auto& c : corners) {
      for (double& ch : c) ch = rng.uniform(0.0, 255.0);
    }
    RasterImage img(width, height);
    for (int y = 0; y < height; ++y) {
      const double fy = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
      for (int x = 0; x < width; ++x) {
        const double fx = width > 1 ? static_cast<double>(x) / (width - 1) : 0.0;
        Rgb px;
        for (int ch = 0; ch < 3; ++ch) {
          const double top = corners[0][ch] * (1 - fx) + corners[1][ch] * fx;
          const double bottom = corners[2][ch] * (1 - fx) + corners[3][ch] * fx;
          const double v = top * (1 - fy) + bottom * fy + rng.uniform(-12.0, 12.0);
          px[ch] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
        img.set(x, y, px);
      }
    }
    corpus.ids.push_back("synthetic_" + std::to_string(i) + ".png");
    corpus.images.push_back(std::move(img));
  }
  return corpus;
}

TextAttributedGraph synthetic_graph(std::size_t nodes, std::size_t edges, std::uint64_t seed) {
  static const char* kWords[] = {"graph",   "neural", "network", "learning", "model",
                                 "citation", "paper",  "node",    "edge",     "signal",
                                 "protein", "kernel", "vision",  "language", "reward",
                                 "policy",  "sparse", "matrix",  "random",   "walk"};
  SeedStream rng = derive_stream({seed, 0});
  std::vector<GraphNode> ns;
  for (std::size_t i = 0; i < nodes; ++i) {
    std::vector<std::string> words;
    const std::size_t len = 6 + rng.uniform_index(8);
    for (std::size_t w = 0; w < len; ++w) words.push_back(kWords[rng.uniform_index(20)]);
    std::string text;
    for (std::size_t w = 0; w < words.size(); ++w) text += (w ? " " : "") + words[w];
    ns.push_back({"n" + std::to_string(i), text + "."});
  }
  const std::size_t max_edges = nodes * (nodes - 1) / 2;
  edges = std::min(edges, max_edges);
  std::set<std::pair<std::size_t, std::size_t>> chosen;
  std::vector<Edge> es;
  while (chosen.size() < edges) {
    const std::size_t u = rng.uniform_index(nodes);
    const std::size_t v = rng.uniform_index(nodes);
    if (u == v) continue;
    if (chosen.insert(std::minmax(u, v)).second) es.emplace_back(ns[u].id, ns[v].id);
  }
  return TextAttributedGraph(std::move(ns), std::move(es), false);
}

}  // namespace pretextrl
