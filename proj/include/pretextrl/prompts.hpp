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

#ifndef PRETEXTRL_PROMPTS_HPP_
#define PRETEXTRL_PROMPTS_HPP_

#include <string>
#include <string_view>

#include "pretextrl/episode.hpp"

namespace pretextrl {

// Bumped whenever any template text changes; manifests generated under
// different versions are not comparable.
inline constexpr int kPromptTemplateVersion = 1;

std::string rotation_prompt();
std::string jigsaw_prompt(int n);
std::string contrastive_prompt();
std::string position_prompt(int n);

// Graph templates wrap a serialized graph payload (see graph_tasks.hpp).
std::string attribute_mask_prompt(std::string_view graph_context);
std::string neighbor_prompt(std::string_view graph_context);
std::string link_prompt(std::string_view graph_context);

// Example order quoted in the jigsaw template for grid order n.
std::string jigsaw_example_order(int n);

// Deterministic rendering from (task, difficulty, graph_context).
std::string render_prompt(const EpisodeRecord& episode);

// Wraps an answer in the completion grammar the templates ask for.
std::string render_answer(std::string_view answer);

}  // namespace pretextrl

#endif  // PRETEXTRL_PROMPTS_HPP_
