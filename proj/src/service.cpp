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

#include "pretextrl/service.hpp"

#include <algorithm>
#include <charconv>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "pretextrl/answers.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/manifest.hpp"

namespace pretextrl {

using ordered_json = nlohmann::ordered_json;

EpisodeStore::EpisodeStore(std::vector<EpisodeRecord> records) : records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!records_[i].target) {
      throw ValidationError("store: episode " + records_[i].id + " has no plaintext target");
    }
    if (!index_.emplace(records_[i].id, i).second) {
      throw ValidationError("store: duplicate id " + records_[i].id);
    }
  }
}

EpisodeStore EpisodeStore::load(const std::filesystem::path& manifest,
                                const std::filesystem::path& answers) {
  auto records = read_manifest(manifest);
  if (!answers.empty()) attach_answers(records, read_answers(answers));
  return EpisodeStore(std::move(records));
}

const EpisodeRecord* EpisodeStore::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

namespace {

ServiceResponse json_response(int status, const ordered_json& j) {
  return {status, j.dump()};
}

ServiceResponse error_response(int status, std::string message) {
  ordered_json j;
  j["error"] = std::move(message);
  return json_response(status, j);
}

// Verifies one {id, completion} object. Returns the status the item would
// get as a single request.
std::pair<int, ordered_json> verify_item(const EpisodeStore& store, const ordered_json& item) {
  ordered_json out;
  if (!item.is_object() || !item.contains("id") || !item["id"].is_string() ||
      !item.contains("completion") || !item["completion"].is_string()) {
    out["error"] = "expected {\"id\": string, \"completion\": string}";
    return {400, out};
  }
  const auto id = item["id"].get<std::string>();
  const EpisodeRecord* ep = store.find(id);
  out["id"] = id;
  if (ep == nullptr) {
    out["error"] = "unknown episode id";
    return {404, out};
  }
  const RewardResult r = verify(*ep, item["completion"].get<std::string>());
  out["reward"] = r.reward;
  out["reason"] = std::string(reason_name(r.reason));
  out["well_formed"] = r.parsed.well_formed;
  return {200, out};
}

}  // namespace

ServiceResponse handle_verify(const EpisodeStore& store, std::string_view body) {
  const auto j = ordered_json::parse(body, nullptr, false);
  if (j.is_discarded()) return error_response(400, "body is not valid JSON");
  auto [status, out] = verify_item(store, j);
  if (status != 200) return error_response(status, out["error"].get<std::string>());
  return json_response(status, out);
}

ServiceResponse handle_batch(const EpisodeStore& store, std::string_view body) {
  const auto j = ordered_json::parse(body, nullptr, false);
  if (j.is_discarded()) return error_response(400, "body is not valid JSON");
  if (!j.is_object() || !j.contains("items") || !j["items"].is_array()) {
    return error_response(400, "expected {\"items\": [...]}");
  }
  ordered_json results = ordered_json::array();
  for (const auto& item : j["items"]) {
    auto [status, out] = verify_item(store, item);
    if (status != 200) out["status"] = status;
    results.push_back(std::move(out));
  }
  ordered_json resp;
  resp["results"] = std::move(results);
  return json_response(200, resp);
}

ServiceResponse handle_meta(const EpisodeStore& store, std::string_view id) {
  const EpisodeRecord* ep = store.find(id);
  if (ep == nullptr) return error_response(404, "unknown episode id");
  ordered_json j;
  j["id"] = ep->id;
  j["task"] = std::string(task_name(ep->task));
  j["difficulty"] = std::string(difficulty_name(ep->difficulty));
  j["prompt"] = ep->prompt;
  j["images"] = ep->images;
  if (!ep->graph_context.empty()) j["graph_context"] = ep->graph_context;
  return json_response(200, j);
}

ServiceResponse handle_health(const EpisodeStore& store) {
  ordered_json j;
  j["status"] = "ok";
  j["episodes"] = store.size();
  return json_response(200, j);
}

ListenAddress parse_address(std::string_view addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string_view::npos) throw ValidationError("address must be host:port");
  ListenAddress out;
  out.host = std::string(addr.substr(0, colon));
  if (out.host.empty()) out.host = "127.0.0.1";
  const auto port = addr.substr(colon + 1);
  const auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), out.port);
  if (ec != std::errc() || ptr != port.data() + port.size() || out.port < 0 ||
      out.port > 65535) {
    throw ValidationError("bad port in address: " + std::string(addr));
  }
  return out;
}

// Each keep-alive connection pins a worker.
constexpr std::size_t kMinWorkers = 64;
constexpr std::size_t kKeepAliveMaxCount = 1000;

struct VerifierServer::Impl {
  const EpisodeStore& store;
  httplib::Server server;

  explicit Impl(const EpisodeStore& s) : store(s) {
    server.new_task_queue = [] {
      const std::size_t hw = std::thread::hardware_concurrency();
      return new httplib::ThreadPool(std::max<std::size_t>(kMinWorkers, 4 * hw));
    };
    server.set_keep_alive_max_count(kKeepAliveMaxCount);
    server.set_keep_alive_timeout(1);
    server.set_tcp_nodelay(true);
    const auto reply = [](httplib::Response& res, const ServiceResponse& r) {
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    server.Post("/v1/verify", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, handle_verify(store, req.body));
    });
    server.Post("/v1/verify_batch",
                [this, reply](const httplib::Request& req, httplib::Response& res) {
                  reply(res, handle_batch(store, req.body));
                });
    server.Get(R"(/v1/episode/([^/]+))",
               [this, reply](const httplib::Request& req, httplib::Response& res) {
                 reply(res, handle_meta(store, req.matches[1].str()));
               });
    server.Get("/v1/health", [this, reply](const httplib::Request&, httplib::Response& res) {
      reply(res, handle_health(store));
    });
    server.set_error_handler([reply](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) {
        ordered_json j;
        j["error"] = res.status == 404 ? "not found" : "request failed";
        reply(res, {res.status, j.dump()});
      }
    });
  }
};

VerifierServer::VerifierServer(const EpisodeStore& store)
    : impl_(std::make_unique<Impl>(store)) {}

VerifierServer::~VerifierServer() { stop(); }

int VerifierServer::bind(const ListenAddress& addr) {
  int port = addr.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(addr.host);
  } else if (!impl_->server.bind_to_port(addr.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw IoError("cannot bind " + addr.host + ":" + std::to_string(addr.port));
  }
  return port;
}

void VerifierServer::serve() { impl_->server.listen_after_bind(); }

void VerifierServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool VerifierServer::running() const { return impl_->server.is_running(); }

void VerifierServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace pretextrl
