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

#ifndef PRETEXTRL_MANIFEST_HPP_
#define PRETEXTRL_MANIFEST_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pretextrl/episode.hpp"
#include "pretextrl/error.hpp"

namespace pretextrl {

// Parse or validation failure at a 1-based line of a line-delimited file.
class ManifestError : public ValidationError {
 public:
  ManifestError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct AnswerRecord {
  std::string id;
  std::string target;
  std::string salt;

  friend bool operator==(const AnswerRecord&, const AnswerRecord&) = default;
};

struct ManifestWriteOptions {
  // When false the public manifest carries only target_hash and the
  // plaintext goes to answers_path.
  bool reveal_targets = false;
  // Defaults to answers_path_for(manifest path).
  std::filesystem::path answers_path;
};

// "<dir>/<stem>.answers.jsonl" next to the manifest.
std::filesystem::path answers_path_for(const std::filesystem::path& manifest);

// Per-episode salt for target digests, derived from the episode seed.
std::string target_salt(const SeedSpec& seed);

// One JSON object per line in input order. Every record must carry a
// plaintext target. Throws ValidationError on duplicate ids, IoError when a
// file cannot be written.
void write_manifest(std::span<const EpisodeRecord> episodes,
                    const std::filesystem::path& path,
                    const ManifestWriteOptions& options = {});

// Order-preserving. Throws ManifestError naming the offending line.
std::vector<EpisodeRecord> read_manifest(const std::filesystem::path& path);

std::vector<AnswerRecord> read_answers(const std::filesystem::path& path);

// Fills plaintext targets from the private answers, checking each against
// the public digest. Throws ValidationError naming the id on mismatch or
// missing answers.
void attach_answers(std::vector<EpisodeRecord>& episodes,
                    std::span<const AnswerRecord> answers);

// Single-record codecs used by the manifest and the service.
std::string to_json_line(const EpisodeRecord& record);
EpisodeRecord from_json_line(const std::string& line);

}  // namespace pretextrl

#endif  // PRETEXTRL_MANIFEST_HPP_
