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

#include "pretextrl/manifest.hpp"

#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace pretextrl {
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kSaltDomain = 0x73616c742d763031ULL;  // "salt-v01"

ordered_json to_json(const EpisodeRecord& r, bool include_target) {
  ordered_json j;
  j["id"] = r.id;
  j["task"] = task_name(r.task);
  j["difficulty"] = difficulty_name(r.difficulty);
  j["images"] = r.images;
  if (!r.graph_context.empty()) j["graph_context"] = r.graph_context;
  j["prompt"] = r.prompt;
  if (r.answer_space) j["answer_space"] = *r.answer_space;
  if (include_target && r.target) {
    j["target"] = *r.target;
  } else if (r.target_hash) {
    j["target_hash"] = *r.target_hash;
  }
  j["seed"] = {{"global", r.seed.global_seed}, {"index", r.seed.episode_index}};
  return j;
}

EpisodeRecord from_json(const ordered_json& j) {
  EpisodeRecord r;
  r.id = j.at("id").get<std::string>();
  r.task = parse_task(j.at("task").get<std::string>());
  r.difficulty = parse_difficulty(j.at("difficulty").get<std::string>());
  r.images = j.at("images").get<std::vector<std::string>>();
  if (j.contains("graph_context")) r.graph_context = j["graph_context"].get<std::string>();
  r.prompt = j.at("prompt").get<std::string>();
  if (j.contains("answer_space")) {
    r.answer_space = j["answer_space"].get<std::vector<std::string>>();
  }
  if (j.contains("target")) r.target = j["target"].get<std::string>();
  if (j.contains("target_hash")) r.target_hash = j["target_hash"].get<std::string>();
  const auto& seed = j.at("seed");
  r.seed.global_seed = seed.at("global").get<std::uint64_t>();
  r.seed.episode_index = seed.at("index").get<std::uint64_t>();
  return r;
}

template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    fn(lineno, line);
  }
  if (in.bad()) throw IoError("read failed: " + path.string());
}

}  // namespace

fs::path answers_path_for(const fs::path& manifest) {
  fs::path out = manifest.parent_path() / manifest.stem();
  out += ".answers.jsonl";
  return out;
}

std::string target_salt(const SeedSpec& seed) {
  SeedStream rng(splitmix64(stream_seed(seed) ^ kSaltDomain));
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 2; ++i) {
    const std::uint64_t v = rng.next_u64();
    for (int s = 60; s >= 0; s -= 4) out.push_back(kHex[(v >> s) & 0xF]);
  }
  return out;
}

std::string to_json_line(const EpisodeRecord& record) {
  return to_json(record, true).dump();
}

EpisodeRecord from_json_line(const std::string& line) {
  return from_json(ordered_json::parse(line));
}

void write_manifest(std::span<const EpisodeRecord> episodes, const fs::path& path,
                    const ManifestWriteOptions& options) {
  std::unordered_set<std::string> seen;
  for (const auto& e : episodes) {
    if (!seen.insert(e.id).second) throw ValidationError("duplicate episode id " + e.id);
    if (!e.target) throw ValidationError("episode " + e.id + ": missing plaintext target");
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  std::ofstream answers;
  if (!options.reveal_targets) {
    const fs::path apath =
        options.answers_path.empty() ? answers_path_for(path) : options.answers_path;
    answers.open(apath, std::ios::binary | std::ios::trunc);
    if (!answers) throw IoError("cannot write answers file " + apath.string());
  }

  for (const auto& e : episodes) {
    if (options.reveal_targets) {
      out << to_json(e, true).dump() << '\n';
      continue;
    }
    EpisodeRecord pub = e;
    const std::string salt = target_salt(e.seed);
    pub.target_hash = target_digest(salt, *e.target);
    pub.target.reset();
    out << to_json(pub, false).dump() << '\n';
    ordered_json a;
    a["id"] = e.id;
    a["target"] = *e.target;
    a["salt"] = salt;
    answers << a.dump() << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
  if (answers.is_open()) {
    answers.flush();
    if (!answers) throw IoError("write failed for answers file");
  }
}

std::vector<EpisodeRecord> read_manifest(const fs::path& path) {
  std::vector<EpisodeRecord> out;
  std::unordered_set<std::string> seen;
  for_each_line(path, [&](std::size_t lineno, const std::string& line) {
    EpisodeRecord r;
    try {
      r = from_json(ordered_json::parse(line));
      validate(r);
    } catch (const nlohmann::json::exception& e) {
      throw ManifestError(lineno, e.what());
    } catch (const ValidationError& e) {
      throw ManifestError(lineno, e.what());
    }
    if (!seen.insert(r.id).second) {
      throw ManifestError(lineno, "duplicate episode id " + r.id);
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<AnswerRecord> read_answers(const fs::path& path) {
  std::vector<AnswerRecord> out;
  for_each_line(path, [&](std::size_t lineno, const std::string& line) {
    try {
      const auto j = ordered_json::parse(line);
      AnswerRecord a;
      a.id = j.at("id").get<std::string>();
      a.target = j.at("target").get<std::string>();
      if (j.contains("salt")) a.salt = j["salt"].get<std::string>();
      out.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      throw ManifestError(lineno, e.what());
    }
  });
  return out;
}

void attach_answers(std::vector<EpisodeRecord>& episodes,
                    std::span<const AnswerRecord> answers) {
  std::unordered_map<std::string, const AnswerRecord*> by_id;
  for (const auto& a : answers) by_id[a.id] = &a;
  for (auto& e : episodes) {
    if (e.target) continue;
    const auto it = by_id.find(e.id);
    if (it == by_id.end()) throw ValidationError("episode " + e.id + ": no private answer");
    const AnswerRecord& a = *it->second;
    if (e.target_hash && target_digest(a.salt, a.target) != *e.target_hash) {
      throw ValidationError("episode " + e.id + ": answer does not match target_hash");
    }
    e.target = a.target;
    validate(e);
  }
}

}  // namespace pretextrl
