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

#include "pretextrl/prompts.hpp"

#include <numeric>

#include "pretextrl/error.hpp"
#include "pretextrl/permutation.hpp"

namespace pretextrl {
namespace {

std::string placeholders(std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) out += kImagePlaceholder;
  return out;
}

constexpr std::string_view kThinkFormat =
    "Your answer should strictly follow this format:\n\n"
    "<think> your step-by-step reasoning here</think> <answer>";

std::string format_footer(std::string_view answer_slot) {
  std::string out(kThinkFormat);
  out += answer_slot;
  out += "</answer>";
  return out;
}

constexpr std::string_view kGraphIntro =
    "The following is part of a text-attributed graph. Each line under \"Graph:\" "
    "lists a node followed by its neighbors, and each line under \"Node "
    "descriptions:\" gives the text attached to a node.";

}  // namespace

std::string rotation_prompt() {
  return placeholders(2) +
         "\nThese are two images. The second image is a rotated version of the first "
         "image. Please determine how many degrees the second image has been rotated "
         "counter-clockwise relative to the first image.\n\n"
         "You must reason step-by-step and then provide the final answer. The output "
         "must strictly follow this format: <think> your reasoning here </think>  "
         "<answer>number_of_degrees</answer>.";
}

std::string jigsaw_example_order(int n) {
  if (n == 3) return "3,1,9,2,8,5,4,6,7";
  if (n == 2) return "3,1,4,2";
  // Stride walk over 1..L with a stride coprime to L.
  const int len = n * n;
  int stride = len / 2 + 1;
  while (std::gcd(stride, len) != 1) ++stride;
  std::vector<int> order(len);
  for (int k = 0; k < len; ++k) order[k] = (k * stride + 2) % len + 1;
  return PermutationCode(std::move(order), n).to_string();
}

std::string jigsaw_prompt(int n) {
  const std::string count = std::to_string(n * n);
  const std::string grid = std::to_string(n) + "x" + std::to_string(n);
  return placeholders(static_cast<std::size_t>(n) * n) +
         "\n\nThe provided images represent " + count +
         " parts of an original image, divided into a " + grid +
         " grid.\n\n"
         "Your task is to determine the correct order of these parts to reconstruct "
         "the original image. Starting from the top-left corner, proceed row by row, "
         "from left to right and top to bottom, to arrange the parts.\n\n"
         "The output should be a string of numbers, separated by a comma, where each "
         "number corresponds to the original position of the patches in the restored "
         "image. For instance, \"" +
         jigsaw_example_order(n) +
         "\" would indicate the positions of the patches in the correct order.\n\n"
         "Before providing the final result, you must reason through the puzzle step "
         "by step. Consider the relative placement of each part and how they fit "
         "together.\n\n" +
         format_footer("order");
}

std::string contrastive_prompt() {
  return placeholders(2) +
         "\n\nThe provided images are augmentations of the same original image or two "
         "different images.\n"
         "The augmentations may include random cropping, color adjustments, grayscale "
         "conversion, blurring, and flipping.\n"
         "Please think step-by-step and determine if these two images are possibly "
         "derived from the same original image.\n"
         "If the provided images are from the same original image, respond with "
         "\"positive\"; if they correspond to different original images, respond with "
         "\"negative\".\n\n" +
         format_footer("positive/negative");
}

std::string position_prompt(int n) {
  const std::string ns = std::to_string(n);
  std::string quadrants;
  if (n == 2) {
    quadrants =
        " Here 1/1 is the upper-left quadrant, 1/2 the upper-right quadrant, 2/1 the "
        "lower-left quadrant and 2/2 the lower-right quadrant.";
  }
  return placeholders(2) +
         "\n\nThe second image in an augmented version of a crop in the first image. "
         "The augmentations may include grayscale, color jitter, solarization, etc. "
         "Please determine which part of the first image the second image is from. "
         "The second image is partitioned into " +
         ns + "x" + ns +
         " parts, and the first image can be only from one of the parts, but cannot "
         "be across two parts. The answer should be in the format of x/y, where x is "
         "the row number (from top to bottom) and y is the column number (from left "
         "to right). For example, 1/1 indicates the top-left part, and 1/" +
         ns + " indicates the top-right part. Both x and y may take values from 1 to " +
         ns + "." + quadrants + "\n\n" + format_footer("x/y");
}

std::string attribute_mask_prompt(std::string_view graph_context) {
  return std::string(kGraphIntro) + "\n\n" + std::string(graph_context) +
         "\n\nSome words in the description of the masked node were replaced by "
         "[MASK]. Use the graph structure and the descriptions of related nodes to "
         "recover the masked words. The answer should list the masked words in order "
         "of appearance, separated by single spaces.\n\n" +
         format_footer("masked words");
}

std::string neighbor_prompt(std::string_view graph_context) {
  return std::string(kGraphIntro) + "\n\n" + std::string(graph_context) +
         "\n\nEvery edge touching the target node has been removed from the graph "
         "above. Determine which of the candidate nodes are adjacent to the target "
         "node in the full graph. The answer should be the ids of all adjacent "
         "candidates, separated by commas.\n\n" +
         format_footer("id1,id2");
}

std::string link_prompt(std::string_view graph_context) {
  return std::string(kGraphIntro) + "\n\n" + std::string(graph_context) +
         "\n\nSome edges may be hidden from the graph above. Determine whether the two "
         "nodes of the node pair are connected by an edge in the full graph. If they "
         "are connected, respond with \"yes\"; otherwise respond with \"no\".\n\n" +
         format_footer("yes/no");
}

std::string render_prompt(const EpisodeRecord& e) {
  const DifficultyPreset p = preset(e.difficulty);
  switch (e.task) {
    case Task::kRotation: return rotation_prompt();
    case Task::kJigsaw: return jigsaw_prompt(p.grid_order);
    case Task::kContrastive: return contrastive_prompt();
    case Task::kPosition: return position_prompt(p.grid_order);
    case Task::kAttributeMask: return attribute_mask_prompt(e.graph_context);
    case Task::kNeighbor: return neighbor_prompt(e.graph_context);
    case Task::kLink: return link_prompt(e.graph_context);
  }
  throw ValidationError("render_prompt: no template for task");
}

std::string render_answer(std::string_view answer) {
  return "<think>The answer follows.</think><answer>" + std::string(answer) + "</answer>";
}

}  // namespace pretextrl
