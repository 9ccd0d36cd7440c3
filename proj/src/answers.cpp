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

#include "pretextrl/answers.hpp"

#include <algorithm>
#include <fstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/graph_tasks.hpp"
#include "pretextrl/manifest.hpp"
#include "pretextrl/text.hpp"

namespace pretextrl {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

bool contains_tag(std::string_view s) {
  for (auto tag : {kThinkOpen, kThinkClose, kAnswerOpen, kAnswerClose}) {
    if (s.find(tag) != std::string_view::npos) return true;
  }
  return false;
}

std::string remove_whitespace(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') out.push_back(c);
  }
  return out;
}

std::string strip_trailing_periods(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == ' ')) s.pop_back();
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Splits on commas, trimming each field; empty fields are kept.
std::vector<std::string_view> comma_split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = std::min(s.find(',', start), s.size());
    out.push_back(trim(s.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string generic(std::string_view raw) {
  const std::string collapsed = join(split_whitespace(to_lower_ascii(raw)), " ");
  std::string out;
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    const char c = collapsed[i];
    if (c == ' ') {
      const char prev = out.empty() ? '\0' : out.back();
      const char next = i + 1 < collapsed.size() ? collapsed[i + 1] : '\0';
      if (prev == ',' || prev == '/' || next == ',' || next == '/') continue;
    }
    out.push_back(c);
  }
  return strip_trailing_periods(std::move(out));
}

std::string rotation(std::string_view raw) {
  std::string s = generic(raw);
  for (std::string_view suffix : {"degrees", "degree", "deg", "\xC2\xB0"}) {
    if (ends_with(s, suffix)) {
      s.resize(s.size() - suffix.size());
      break;
    }
  }
  return remove_whitespace(s);
}

std::string id_set(std::string_view raw) {
  std::vector<std::string> ids;
  for (auto tok : comma_split(raw)) {
    if (!tok.empty()) ids.emplace_back(tok);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return join(ids, ",");
}

bool is_permutation_string(std::string_view s, std::size_t len) {
  std::vector<bool> seen(len + 1, false);
  const auto fields = comma_split(s);
  if (fields.size() != len) return false;
  for (auto tok : fields) {
    if (tok.empty() || tok.size() > 3 ||
        !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return false;
    }
    const std::size_t v = std::stoul(std::string(tok));
    if (v < 1 || v > len || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool out_of_space(const EpisodeRecord& e, const std::string& answer,
                  const std::string& target) {
  if (e.answer_space) {
    return std::find(e.answer_space->begin(), e.answer_space->end(), answer) ==
           e.answer_space->end();
  }
  if (e.task == Task::kJigsaw) {
    return !is_permutation_string(answer, comma_split(target).size());
  }
  if (e.task == Task::kNeighbor) {
    const auto candidates = neighbor_candidates(e);
    if (candidates.empty() || answer.empty()) return false;
    for (auto id : comma_split(answer)) {
      if (std::find(candidates.begin(), candidates.end(), id) == candidates.end()) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

AnswerKind answer_kind(Task task) {
  switch (task) {
    case Task::kRotation: return AnswerKind::kRotation;
    case Task::kJigsaw: return AnswerKind::kPermutation;
    case Task::kContrastive: return AnswerKind::kCategorical;
    case Task::kPosition: return AnswerKind::kPosition;
    case Task::kAttributeMask: return AnswerKind::kFreeText;
    case Task::kNeighbor: return AnswerKind::kIdSet;
    case Task::kLink: return AnswerKind::kCategorical;
  }
  return AnswerKind::kGeneric;
}

std::string canonicalize_answer(std::string_view raw, AnswerKind kind) {
  switch (kind) {
    case AnswerKind::kGeneric: return generic(raw);
    case AnswerKind::kRotation: return rotation(raw);
    case AnswerKind::kPermutation:
    case AnswerKind::kPosition: return strip_trailing_periods(remove_whitespace(raw));
    case AnswerKind::kCategorical:
    case AnswerKind::kFreeText: return canonical_text(raw);
    case AnswerKind::kIdSet: return id_set(raw);
  }
  return std::string(raw);
}

ParsedCompletion parse_completion(std::string_view text, AnswerKind kind) {
  ParsedCompletion out;
  const std::string_view s = trim(text);

  auto best_effort = [&] {
    const auto open = s.rfind(kAnswerOpen);
    if (open != std::string_view::npos) {
      const auto body = s.substr(open + kAnswerOpen.size());
      out.answer = canonicalize_answer(body.substr(0, body.find(kAnswerClose)), kind);
    }
    out.well_formed = false;
    return out;
  };

  if (!s.starts_with(kThinkOpen)) return best_effort();
  const std::size_t think_end = s.find(kThinkClose, kThinkOpen.size());
  if (think_end == std::string_view::npos) return best_effort();
  const std::string_view think = s.substr(kThinkOpen.size(), think_end - kThinkOpen.size());
  if (contains_tag(think)) return best_effort();

  const std::string_view rest = trim(s.substr(think_end + kThinkClose.size()));
  if (!rest.starts_with(kAnswerOpen)) return best_effort();
  const std::size_t answer_end = rest.find(kAnswerClose, kAnswerOpen.size());
  if (answer_end == std::string_view::npos) return best_effort();
  const std::string_view answer =
      rest.substr(kAnswerOpen.size(), answer_end - kAnswerOpen.size());
  if (contains_tag(answer)) return best_effort();
  if (answer_end + kAnswerClose.size() != rest.size()) return best_effort();

  out.think = std::string(think);
  out.answer = canonicalize_answer(answer, kind);
  out.well_formed = true;
  return out;
}

std::string_view reason_name(RewardReason reason) {
  switch (reason) {
    case RewardReason::kCorrect: return "correct";
    case RewardReason::kWrongAnswer: return "wrong_answer";
    case RewardReason::kMalformed: return "malformed";
    case RewardReason::kOutOfSpace: return "out_of_space";
  }
  return "unknown";
}

RewardResult verify(const EpisodeRecord& episode, std::string_view completion) {
  if (!episode.target) {
    throw ValidationError("verify: episode " + episode.id + " has no plaintext target");
  }
  const AnswerKind kind = answer_kind(episode.task);
  RewardResult r;
  r.parsed = parse_completion(completion, kind);
  if (!r.parsed.well_formed) {
    r.reason = RewardReason::kMalformed;
    return r;
  }
  const std::string target = canonicalize_answer(*episode.target, kind);
  if (r.parsed.answer == target) {
    r.reward = 1;
    r.reason = RewardReason::kCorrect;
  } else if (out_of_space(episode, r.parsed.answer, target)) {
    r.reason = RewardReason::kOutOfSpace;
  } else {
    r.reason = RewardReason::kWrongAnswer;
  }
  return r;
}

BatchReport batch_verify(std::span<const EpisodeRecord> episodes,
                         std::span<const CompletionRecord> completions,
                         unsigned workers) {
  std::unordered_map<std::string_view, const EpisodeRecord*> by_id;
  by_id.reserve(episodes.size());
  for (const auto& e : episodes) by_id.emplace(e.id, &e);

  BatchReport report;
  report.rows.resize(completions.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      BatchRow& row = report.rows[i];
      row.id = completions[i].id;
      const auto it = by_id.find(row.id);
      if (it == by_id.end()) {
        row.error = "unknown episode id";
        continue;
      }
      row.result = verify(*it->second, completions[i].completion);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1 || completions.size() < 2 * static_cast<std::size_t>(workers)) {
    work(0, completions.size());
  } else {
    // Each worker owns a contiguous slice of rows; output order is fixed.
    std::vector<std::jthread> pool;
    const std::size_t chunk = (completions.size() + workers - 1) / workers;
    for (std::size_t b = 0; b < completions.size(); b += chunk) {
      pool.emplace_back(work, b, std::min(b + chunk, completions.size()));
    }
  }

  for (const auto& row : report.rows) {
    if (!row.result) {
      ++report.unknown_ids;
      continue;
    }
    const EpisodeRecord& e = *by_id.at(row.id);
    auto& g = report.by_group[{std::string(task_name(e.task)),
                               std::string(difficulty_name(e.difficulty))}];
    ++g.count;
    g.rewarded += row.result->reward;
    ++report.overall.count;
    report.overall.rewarded += row.result->reward;
  }
  return report;
}

std::vector<CompletionRecord> read_completions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open completions file " + path.string());
  std::vector<CompletionRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      out.push_back({j.at("id").get<std::string>(), j.at("completion").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ManifestError(lineno, e.what());
    }
  }
  return out;
}

void write_completions(std::span<const CompletionRecord> completions,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& c : completions) {
    nlohmann::ordered_json j;
    j["id"] = c.id;
    j["completion"] = c.completion;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_results(const BatchReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& row : report.rows) {
    nlohmann::ordered_json j;
    j["id"] = row.id;
    if (row.result) {
      j["reward"] = row.result->reward;
      j["reason"] = reason_name(row.result->reason);
    } else {
      j["error"] = row.error;
    }
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace pretextrl
