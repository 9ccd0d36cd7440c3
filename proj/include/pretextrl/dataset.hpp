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

#ifndef PRETEXTRL_DATASET_HPP_
#define PRETEXTRL_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pretextrl/graph.hpp"
#include "pretextrl/graph_tasks.hpp"
#include "pretextrl/image.hpp"
#include "pretextrl/vision_tasks.hpp"

namespace pretextrl {

struct ImageCorpus {
  // File names, used as source identities for contrastive pairs.
  std::vector<std::string> ids;
  std::vector<RasterImage> images;
};

// Every .png / .rgb file in `dir`, sorted by file name.
ImageCorpus load_image_corpus(const std::filesystem::path& dir);

struct GenConfig {
  // Episode i uses tasks[i % tasks.size()]; all four vision tasks gives the
  // round-robin combination.
  std::vector<Task> tasks;
  Difficulty difficulty = Difficulty::kStandard;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool augment_position_patch = false;
  GraphTaskConfig graph;
  std::string image_dir = "images";
  std::string image_ext = ".png";
};

// Parses "--task" values: a task name or "combination".
std::vector<Task> parse_task_selection(std::string_view name);

// Pure function of (corpus, cfg); output is ordered by episode index no
// matter how many workers run.
std::vector<GeneratedEpisode> generate_vision_episodes(const ImageCorpus& corpus,
                                                       const GenConfig& cfg);
std::vector<GeneratedEpisode> generate_graph_episodes(const TextAttributedGraph& graph,
                                                      const GenConfig& cfg);

std::map<std::string, std::size_t> count_by_task(std::span<const GeneratedEpisode> episodes);

struct DatasetPaths {
  std::filesystem::path manifest;
  std::filesystem::path answers;
};

// Writes <out>/manifest.jsonl, the private answers file (unless targets
// are revealed) and every episode image under <out>/<image_dir>.
DatasetPaths write_dataset(std::span<const GeneratedEpisode> episodes,
                           const std::filesystem::path& out_dir, bool reveal_targets);

// Synthetic corpus of smooth random color fields, for demos and tests.
ImageCorpus synthetic_corpus(std::size_t count, int width, int height, std::uint64_t seed);
TextAttributedGraph synthetic_graph(std::size_t nodes, std::size_t edges, std::uint64_t seed);

}  // namespace pretextrl

#endif  // PRETEXTRL_DATASET_HPP_
