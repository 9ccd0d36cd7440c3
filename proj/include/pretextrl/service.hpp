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

#ifndef PRETEXTRL_SERVICE_HPP_
#define PRETEXTRL_SERVICE_HPP_

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pretextrl/episode.hpp"

namespace pretextrl {

// Read-only id -> episode map. Every record carries its plaintext target.
class EpisodeStore {
 public:
  explicit EpisodeStore(std::vector<EpisodeRecord> records);

  // `answers` may be empty when the manifest already reveals its targets.
  static EpisodeStore load(const std::filesystem::path& manifest,
                           const std::filesystem::path& answers);

  const EpisodeRecord* find(std::string_view id) const;
  std::size_t size() const { return records_.size(); }
  std::span<const EpisodeRecord> records() const { return records_; }

 private:
  std::vector<EpisodeRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ServiceResponse {
  int status = 200;
  std::string body;  // one JSON object
};

// Transport-independent handlers. Each is a pure function of its inputs.
ServiceResponse handle_verify(const EpisodeStore& store, std::string_view body);
// Body {"items": [{id, completion}, ...]} -> {"results": [...]}, in order.
ServiceResponse handle_batch(const EpisodeStore& store, std::string_view body);
ServiceResponse handle_meta(const EpisodeStore& store, std::string_view id);
ServiceResponse handle_health(const EpisodeStore& store);

struct ListenAddress {
  std::string host;
  int port = 0;
};

// "host:port" or ":port"; port 0 picks a free port.
ListenAddress parse_address(std::string_view addr);

// HTTP/1.1 front end over a store that must outlive it.
class VerifierServer {
 public:
  explicit VerifierServer(const EpisodeStore& store);
  ~VerifierServer();
  VerifierServer(const VerifierServer&) = delete;
  VerifierServer& operator=(const VerifierServer&) = delete;

  // Binds and returns the bound port. Throws IoError on failure.
  int bind(const ListenAddress& addr);
  // Blocks until stop(); in-flight requests finish first.
  void serve();
  void stop();
  bool running() const;
  // Blocks until serve() is accepting connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pretextrl

#endif  // PRETEXTRL_SERVICE_HPP_
