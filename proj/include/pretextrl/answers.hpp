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

#ifndef PRETEXTRL_ANSWERS_HPP_
#define PRETEXTRL_ANSWERS_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pretextrl/episode.hpp"

namespace pretextrl {

// How an answer string is normalized before comparison.
enum class AnswerKind {
  kGeneric,      // trim, lowercase, collapse spaces, tighten around ',' and '/'
  kRotation,     // generic plus degree sign / "degrees" removed
  kPermutation,  // all whitespace removed
  kCategorical,  // canonical_text
  kPosition,     // all whitespace removed
  kFreeText,     // canonical_text
  kIdSet,        // comma list, trimmed, sorted, deduplicated; case kept
};

AnswerKind answer_kind(Task task);
std::string canonicalize_answer(std::string_view raw, AnswerKind kind);

struct ParsedCompletion {
  std::string think;
  std::string answer;
  // True iff the text is exactly <think>..</think> then <answer>..</answer>,
  // whitespace allowed around and between the blocks, nothing else.
  bool well_formed = false;

  friend bool operator==(const ParsedCompletion&, const ParsedCompletion&) = default;
};

// Total. For malformed text `answer` holds a best-effort extraction of the
// last answer block, for diagnostics only.
ParsedCompletion parse_completion(std::string_view text,
                                  AnswerKind kind = AnswerKind::kGeneric);

enum class RewardReason { kCorrect, kWrongAnswer, kMalformed, kOutOfSpace };

std::string_view reason_name(RewardReason reason);

struct RewardResult {
  int reward = 0;
  ParsedCompletion parsed;
  RewardReason reason = RewardReason::kMalformed;

  friend bool operator==(const RewardResult&, const RewardResult&) = default;
};

// Binary reward 1[canonical(answer) == target]. Requires a plaintext
// target; throws ValidationError otherwise.
RewardResult verify(const EpisodeRecord& episode, std::string_view completion);

struct CompletionRecord {
  std::string id;
  std::string completion;
};

struct BatchRow {
  std::string id;
  std::optional<RewardResult> result;
  // Set when the id is unknown; the row then has no result.
  std::string error;
};

struct RewardStats {
  std::size_t count = 0;
  std::size_t rewarded = 0;
  double mean() const { return count ? static_cast<double>(rewarded) / count : 0.0; }
};

struct BatchReport {
  std::vector<BatchRow> rows;
  // Keyed by (task, difficulty) names.
  std::map<std::pair<std::string, std::string>, RewardStats> by_group;
  RewardStats overall;
  std::size_t unknown_ids = 0;
};

// Order-stable over `completions`. Unknown ids become per-row errors.
BatchReport batch_verify(std::span<const EpisodeRecord> episodes,
                         std::span<const CompletionRecord> completions,
                         unsigned workers = 1);

std::vector<CompletionRecord> read_completions(const std::filesystem::path& path);
void write_completions(std::span<const CompletionRecord> completions,
                       const std::filesystem::path& path);
// {id, reward, reason} per row, or {id, error} for unknown ids.
void write_results(const BatchReport& report, const std::filesystem::path& path);

}  // namespace pretextrl

#endif  // PRETEXTRL_ANSWERS_HPP_
