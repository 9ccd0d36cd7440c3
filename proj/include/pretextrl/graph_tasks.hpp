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

#ifndef PRETEXTRL_GRAPH_TASKS_HPP_
#define PRETEXTRL_GRAPH_TASKS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "pretextrl/episode.hpp"
#include "pretextrl/graph.hpp"
#include "pretextrl/seed.hpp"
#include "pretextrl/vision_tasks.hpp"

namespace pretextrl {

inline constexpr std::string_view kMaskToken = "[MASK]";

struct GraphTaskConfig {
  // Fraction of maskable tokens hidden; k = floor(fraction * tokens).
  double mask_fraction = 0.3;
  // Radius of the partially observed neighborhood shown in the prompt.
  int hops = 2;
  // Sampled non-neighbor candidates; 0 means one per true neighbor.
  int negatives = 0;
};

// Result of masking one description.
struct MaskedText {
  std::string masked;  // tokens with "[MASK]" in place of each hidden word
  std::string target;  // hidden words in order, canonical form
  int masked_count = 0;
};

// Masks k = floor(fraction * T) of the T tokens that have a nonempty core
// (token minus leading/trailing punctuation). Punctuation around a masked
// core stays visible. Throws ValidationError when k would be 0.
MaskedText mask_tokens(std::string_view text, double fraction, SeedStream& rng);
int maskable_token_count(std::string_view text);

// Puts the target words back at the sentinel positions.
std::string reinsert_masked(std::string_view masked, std::string_view target);

GeneratedEpisode make_attribute_mask_episode(const TextAttributedGraph& g,
                                             const DifficultyPreset& p,
                                             const GraphTaskConfig& cfg, SeedStream& rng,
                                             const EpisodeContext& ctx);
// Masks the description of a given node.
GeneratedEpisode attribute_mask_for_node(const TextAttributedGraph& g,
                                         std::string_view node,
                                         const DifficultyPreset& p,
                                         const GraphTaskConfig& cfg, SeedStream& rng,
                                         const EpisodeContext& ctx);

GeneratedEpisode make_neighbor_episode(const TextAttributedGraph& g,
                                       const DifficultyPreset& p,
                                       const GraphTaskConfig& cfg, SeedStream& rng,
                                       const EpisodeContext& ctx);
GeneratedEpisode neighbor_for_node(const TextAttributedGraph& g, std::string_view node,
                                   const DifficultyPreset& p, const GraphTaskConfig& cfg,
                                   SeedStream& rng, const EpisodeContext& ctx);

GeneratedEpisode make_link_episode(const TextAttributedGraph& g, const DifficultyPreset& p,
                                   const GraphTaskConfig& cfg, SeedStream& rng,
                                   const EpisodeContext& ctx);

// Candidate ids listed in a neighbor episode's graph payload.
std::vector<std::string> neighbor_candidates(const EpisodeRecord& episode);

}  // namespace pretextrl

#endif  // PRETEXTRL_GRAPH_TASKS_HPP_
