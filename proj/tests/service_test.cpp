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

#include <gtest/gtest.h>

#include <algorithm>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "pretextrl/answers.hpp"
#include "pretextrl/dataset.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/manifest.hpp"
#include "pretextrl/prompts.hpp"
#include "test_util.hpp"

namespace pretextrl {
namespace {

using nlohmann::json;

std::vector<EpisodeRecord> fixture_records() {
  const ImageCorpus corpus = synthetic_corpus(4, 24, 24, 1);
  GenConfig cfg;
  cfg.tasks = parse_task_selection("combination");
  cfg.count = 40;
  cfg.difficulty = Difficulty::kHard;
  std::vector<EpisodeRecord> out;
  for (auto& g : generate_vision_episodes(corpus, cfg)) out.push_back(std::move(g.record));
  GenConfig gcfg;
  gcfg.tasks = {Task::kAttributeMask, Task::kNeighbor, Task::kLink};
  gcfg.count = 12;
  for (auto& g : generate_graph_episodes(synthetic_graph(20, 40, 2), gcfg)) {
    out.push_back(std::move(g.record));
  }
  return out;
}

std::string verify_body(const std::string& id, const std::string& completion) {
  return json{{"id", id}, {"completion", completion}}.dump();
}

TEST(EpisodeStore, RequiresTargetsAndUniqueIds) {
  auto rs = fixture_records();
  EXPECT_NO_THROW(EpisodeStore{rs});
  auto dup = rs;
  dup.push_back(rs[0]);
  EXPECT_THROW(EpisodeStore{dup}, ValidationError);
  rs[0].target.reset();
  EXPECT_THROW(EpisodeStore{rs}, ValidationError);
}

TEST(EpisodeStore, LoadsHiddenManifestWithAnswers) {
  testing::TempDir dir;
  const auto rs = fixture_records();
  write_manifest(rs, dir / "m.jsonl", {});
  const auto store = EpisodeStore::load(dir / "m.jsonl", answers_path_for(dir / "m.jsonl"));
  EXPECT_EQ(store.size(), rs.size());
  EXPECT_EQ(*store.find(rs[3].id)->target, *rs[3].target);
  EXPECT_THROW(EpisodeStore::load(dir / "m.jsonl", ""), ValidationError);
}

TEST(Handlers, VerifyMatchesOffline) {
  const EpisodeStore store(fixture_records());
  for (const auto& e : store.records()) {
    for (const std::string& c :
         {render_answer(*e.target), render_answer("wrong"), std::string("no tags")}) {
      const auto resp = handle_verify(store, verify_body(e.id, c));
      ASSERT_EQ(resp.status, 200);
      const auto j = json::parse(resp.body);
      const auto offline = verify(e, c);
      EXPECT_EQ(j["id"], e.id);
      EXPECT_EQ(j["reward"].get<int>(), offline.reward);
      EXPECT_EQ(j["reason"], std::string(reason_name(offline.reason)));
      EXPECT_EQ(j["well_formed"].get<bool>(), offline.parsed.well_formed);
    }
  }
}

TEST(Handlers, Errors) {
  const EpisodeStore store(fixture_records());
  auto r = handle_verify(store, verify_body("missing", "x"));
  EXPECT_EQ(r.status, 404);
  EXPECT_TRUE(json::parse(r.body).contains("error"));
  EXPECT_EQ(handle_verify(store, "{oops").status, 400);
  EXPECT_EQ(handle_verify(store, R"({"id": 3, "completion": "x"})").status, 400);
  EXPECT_EQ(handle_verify(store, R"({"id": "a"})").status, 400);
  EXPECT_EQ(handle_batch(store, R"({"items": 3})").status, 400);
  EXPECT_EQ(handle_meta(store, "missing").status, 404);
}

TEST(Handlers, BatchEqualsSingles) {
  const EpisodeStore store(fixture_records());
  EXPECT_EQ(json::parse(handle_batch(store, R"({"items": []})").body)["results"], json::array());
  json items = json::array();
  for (const auto& e : store.records()) {
    items.push_back({{"id", e.id}, {"completion", render_answer(*e.target)}});
  }
  items.push_back({{"id", "missing"}, {"completion", "x"}});
  items.push_back({{"completion", "x"}});
  const auto resp = handle_batch(store, json{{"items", items}}.dump());
  ASSERT_EQ(resp.status, 200);
  const auto results = json::parse(resp.body)["results"];
  ASSERT_EQ(results.size(), items.size());
  for (std::size_t i = 0; i + 2 < items.size(); ++i) {
    const auto single = json::parse(handle_verify(store, items[i].dump()).body);
    EXPECT_EQ(results[i], single);
    EXPECT_EQ(results[i]["reward"], 1);
  }
  EXPECT_EQ(results[items.size() - 2]["status"], 404);
  EXPECT_EQ(results[items.size() - 1]["status"], 400);
}

TEST(Handlers, MetaNeverCarriesTarget) {
  const auto records = fixture_records();
  const EpisodeStore store(records);
  std::size_t scanned = 0;
  for (const auto& e : records) {
    const auto resp = handle_meta(store, e.id);
    ASSERT_EQ(resp.status, 200);
    const auto j = json::parse(resp.body);
    EXPECT_FALSE(j.contains("target"));
    EXPECT_FALSE(j.contains("target_hash"));
    EXPECT_EQ(j["prompt"], e.prompt);
    EXPECT_EQ(j["images"], e.images);
    // Scan oracle: a target that public fields do not already spell out
    // must not appear anywhere in the body.
    std::string public_text = e.id + "\n" + e.prompt + "\n" + e.graph_context;
    for (const auto& img : e.images) public_text += "\n" + img;
    if (public_text.find(*e.target) == std::string::npos) {
      ++scanned;
      EXPECT_EQ(resp.body.find(*e.target), std::string::npos) << e.id;
    }
  }
  EXPECT_GE(scanned, 10u);
  const auto health = json::parse(handle_health(store).body);
  EXPECT_EQ(health["status"], "ok");
  EXPECT_EQ(health["episodes"], records.size());
}

TEST(Address, Parse) {
  const auto a = parse_address("0.0.0.0:8080");
  EXPECT_EQ(a.host, "0.0.0.0");
  EXPECT_EQ(a.port, 8080);
  EXPECT_EQ(parse_address(":9").host, "127.0.0.1");
  EXPECT_THROW(parse_address("nohost"), ValidationError);
  EXPECT_THROW(parse_address("h:99999"), ValidationError);
  EXPECT_THROW(parse_address("h:x"), ValidationError);
}

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    store_ = std::make_unique<EpisodeStore>(fixture_records());
    server_ = std::make_unique<VerifierServer>(*store_);
    port_ = server_->bind({"127.0.0.1", 0});
    thread_ = std::thread([this] { server_->serve(); });
    server_->wait_until_ready();
  }
  void TearDown() override {
    server_->stop();
    thread_.join();
  }

  std::unique_ptr<EpisodeStore> store_;
  std::unique_ptr<VerifierServer> server_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServerTest, EndpointsOverTheWire) {
  httplib::Client cli("127.0.0.1", port_);
  auto health = cli.Get("/v1/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body)["episodes"], store_->size());
  const auto& e = store_->records()[0];
  auto meta = cli.Get("/v1/episode/" + e.id);
  ASSERT_TRUE(meta);
  EXPECT_EQ(json::parse(meta->body)["prompt"], e.prompt);
  auto missing = cli.Get("/v1/episode/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  auto v = cli.Post("/v1/verify", verify_body(e.id, render_answer(*e.target)),
                    "application/json");
  ASSERT_TRUE(v);
  EXPECT_EQ(json::parse(v->body)["reward"], 1);
  auto bad = cli.Post("/v1/verify", "nope", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto unknown_route = cli.Get("/v2/anything");
  ASSERT_TRUE(unknown_route);
  EXPECT_EQ(unknown_route->status, 404);
}

TEST_F(ServerTest, ConcurrentRequestsMatchBatchVerify) {
  const auto records = store_->records();
  std::vector<CompletionRecord> comps;
  SeedStream rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto& e = records[rng.uniform_index(records.size())];
    const int kind = static_cast<int>(rng.uniform_index(3));
    comps.push_back({e.id, kind == 0   ? render_answer(*e.target)
                           : kind == 1 ? render_answer("nope")
                                       : std::string("<answer>") + *e.target + "</answer>"});
  }
  const BatchReport offline = batch_verify(records, comps);
  std::vector<int> wire(comps.size(), -1);
  constexpr int kThreads = 8;
  std::vector<std::thread> pool;
  for (int t = 0; t < kThreads; ++t) {
    pool.emplace_back([&, t] {
      httplib::Client cli("127.0.0.1", port_);
      for (std::size_t i = t; i < comps.size(); i += kThreads) {
        auto r = cli.Post("/v1/verify", verify_body(comps[i].id, comps[i].completion),
                          "application/json");
        if (r && r->status == 200) wire[i] = json::parse(r->body)["reward"].get<int>();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    ASSERT_EQ(wire[i], offline.rows[i].result->reward) << i;
  }
}

}  // namespace
}  // namespace pretextrl
