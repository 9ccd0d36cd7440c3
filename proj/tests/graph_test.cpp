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

#include "pretextrl/graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "pretextrl/answers.hpp"
#include "pretextrl/error.hpp"
#include "pretextrl/graph_tasks.hpp"
#include "pretextrl/prompts.hpp"
#include "pretextrl/text.hpp"
#include "test_util.hpp"

namespace pretextrl {
namespace {

const std::vector<Edge> kFixtureEdges = {
    {"a", "b"}, {"a", "c"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "f"}, {"b", "e"}};

TextAttributedGraph fixture() {
  return TextAttributedGraph(
      {{"a", "Graph neural networks aggregate messages from neighbors."},
       {"b", "Attention weights, learned per edge, rescale the messages."},
       {"c", "Citation graphs link papers that reference each other."},
       {"d", "Random walks sample (biased) paths through the graph."},
       {"e", "Spectral methods use the Laplacian eigenvectors!"},
       {"f", "Link prediction scores unobserved node pairs."}},
      kFixtureEdges, false);
}

// Oracle: neighbors by scanning the raw edge list.
std::vector<std::string> scan_neighbors(const std::string& node) {
  std::set<std::string> out;
  for (const auto& [u, v] : kFixtureEdges) {
    if (u == node) out.insert(v);
    if (v == node) out.insert(u);
  }
  return {out.begin(), out.end()};
}

const EpisodeContext kCtx{SeedSpec{5, 6}};

TEST(Graph, ValidatesConstruction) {
  EXPECT_THROW(TextAttributedGraph({{"a", ""}, {"a", ""}}, {}, false), ValidationError);
  EXPECT_THROW(TextAttributedGraph({{"a", ""}}, {{"a", "z"}}, false), ValidationError);
  EXPECT_THROW(TextAttributedGraph({{"a", ""}}, {{"a", "a"}}, false), ValidationError);
  EXPECT_THROW(TextAttributedGraph({{"a b", ""}}, {}, false), ValidationError);
  EXPECT_THROW(TextAttributedGraph({{"a,b", ""}}, {}, false), ValidationError);
}

TEST(Graph, UndirectedDedupAndAdjacency) {
  const TextAttributedGraph g({{"a", ""}, {"b", ""}}, {{"a", "b"}, {"b", "a"}}, false);
  EXPECT_EQ(g.edges().size(), 1u);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(1, 0));
  const TextAttributedGraph f = fixture();
  for (std::size_t u = 0; u < f.size(); ++u) {
    std::vector<std::string> ids;
    for (std::size_t v : f.neighbors(u)) ids.push_back(f.nodes()[v].id);
    EXPECT_EQ(ids, scan_neighbors(f.nodes()[u].id));
  }
}

TEST(Graph, SerializeFormat) {
  const TextAttributedGraph g({{"x", "hello"}, {"y", "world"}}, {{"x", "y"}}, false);
  const std::string s = serialize_graph(g);
  EXPECT_NE(s.find("Graph:\nx: y\ny: x\n"), std::string::npos);
  EXPECT_NE(s.find("Node descriptions:"), std::string::npos);
  EXPECT_NE(s.find("\"hello\""), std::string::npos);
}

TEST(Graph, NodesWithinHops) {
  const TextAttributedGraph g = fixture();
  std::set<std::string> one, two;
  for (std::size_t i : nodes_within(g, g.index_of("a"), 1)) one.insert(g.nodes()[i].id);
  for (std::size_t i : nodes_within(g, g.index_of("a"), 2)) two.insert(g.nodes()[i].id);
  EXPECT_EQ(one, (std::set<std::string>{"a", "b", "c"}));
  EXPECT_EQ(two, (std::set<std::string>{"a", "b", "c", "d", "e"}));
}

TEST(Graph, TsvRoundTrip) {
  testing::TempDir dir;
  const TextAttributedGraph g = fixture();
  write_graph(g, dir / "edges.tsv", dir / "nodes.tsv");
  const TextAttributedGraph h = read_graph(dir / "edges.tsv", dir / "nodes.tsv");
  EXPECT_EQ(h.nodes(), g.nodes());
  EXPECT_EQ(h.edges(), g.edges());
  EXPECT_THROW(read_graph(dir / "none.tsv", dir / "nodes.tsv"), IoError);
}

TEST(Neighbor, TargetsMatchAdjacencyScan) {
  const TextAttributedGraph g = fixture();
  const DifficultyPreset p = preset(Difficulty::kStandard);
  GraphTaskConfig cfg;
  SeedStream rng(1);
  for (const auto& node : g.nodes()) {
    const auto truth = scan_neighbors(node.id);
    cfg.negatives = static_cast<int>(std::min<std::size_t>(truth.size(), 5 - truth.size()));
    if (cfg.negatives == 0) cfg.negatives = 1;
    if (g.size() - 1 - truth.size() < static_cast<std::size_t>(cfg.negatives)) continue;
    const auto e = neighbor_for_node(g, node.id, p, cfg, rng, kCtx);
    EXPECT_EQ(*e.record.target, join(truth, ",")) << node.id;
    const auto cands = neighbor_candidates(e.record);
    EXPECT_EQ(cands.size(), truth.size() + cfg.negatives);
    for (const auto& t : truth) {
      EXPECT_NE(std::find(cands.begin(), cands.end(), t), cands.end());
    }
    // The target's edges are withheld from the shown graph.
    const std::string ctx = e.record.graph_context;
    EXPECT_EQ(ctx.find("\n" + node.id + ": " + truth[0]), std::string::npos);
    EXPECT_EQ(verify(e.record, render_answer(*e.record.target)).reward, 1);
  }
}

TEST(Neighbor, AnswerOrderAndSpacingDoNotMatter) {
  const TextAttributedGraph g = fixture();
  SeedStream rng(2);
  GraphTaskConfig cfg;
  cfg.negatives = 2;
  const auto e = neighbor_for_node(g, "c", preset(Difficulty::kStandard), cfg, rng, kCtx);
  EXPECT_EQ(*e.record.target, "a,b,d");
  EXPECT_EQ(verify(e.record, render_answer("d, a ,b")).reward, 1);
  EXPECT_EQ(verify(e.record, render_answer("a,b")).reward, 0);
  EXPECT_EQ(verify(e.record, render_answer("a,b,zz")).reason, RewardReason::kOutOfSpace);
}

TEST(Neighbor, DefaultNegativesEqualDegree) {
  const TextAttributedGraph g = fixture();
  SeedStream rng(3);
  const auto e = neighbor_for_node(g, "f", preset(Difficulty::kStandard), {}, rng, kCtx);
  EXPECT_EQ(neighbor_candidates(e.record).size(), 2u);
}

TEST(Link, BalancedOverManyDraws) {
  const TextAttributedGraph g = fixture();
  const DifficultyPreset p = preset(Difficulty::kStandard);
  SeedStream rng(4);
  constexpr int kDraws = 10000;
  int yes = 0;
  for (int i = 0; i < kDraws; ++i) {
    const auto e = make_link_episode(g, p, {}, rng, kCtx);
    yes += *e.record.target == "yes";
  }
  EXPECT_NEAR(yes / static_cast<double>(kDraws), 0.5, 3 * std::sqrt(0.25 / kDraws));
}

TEST(Link, LabelsAgreeWithGraphAndPositiveEdgeIsHidden) {
  const TextAttributedGraph g = fixture();
  SeedStream rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto e = make_link_episode(g, preset(Difficulty::kStandard), {}, rng, kCtx);
    const std::string& ctx = e.record.graph_context;
    const auto pair = split_whitespace(ctx.substr(ctx.rfind("Node pair: ") + 11));
    const std::string u = pair[0].substr(0, pair[0].size() - 1);
    const std::string v = pair[1];
    const bool edge = g.has_edge(g.index_of(u), g.index_of(v));
    EXPECT_EQ(*e.record.target, edge ? "yes" : "no");
    if (edge) {
      const std::string graph_part = ctx.substr(0, ctx.find("Node descriptions:"));
      for (const auto& line : {"\n" + u + ": ", "\n" + v + ": "}) {
        const auto at = graph_part.find(line);
        if (at == std::string::npos) continue;
        const auto end = graph_part.find('\n', at + 1);
        const auto row = graph_part.substr(at, end - at);
        const std::string other = line == "\n" + u + ": " ? v : u;
        for (const auto& tok : split_whitespace(row.substr(line.size()))) {
          std::string id = tok;
          if (!id.empty() && id.back() == ',') id.pop_back();
          EXPECT_NE(id, other) << "withheld edge visible";
        }
      }
    }
  }
}

TEST(AttributeMask, FractionAndReinsertion) {
  SeedStream rng(6);
  const std::string text = "Attention weights, learned per edge, rescale the messages.";
  for (int i = 0; i < 200; ++i) {
    const MaskedText m = mask_tokens(text, 0.3, rng);
    EXPECT_EQ(m.masked_count, 2);  // floor(0.3 * 8)
    EXPECT_EQ(std::count(m.masked.begin(), m.masked.end(), '['), 2);
    EXPECT_EQ(canonical_text(reinsert_masked(m.masked, m.target)), canonical_text(text));
  }
}

TEST(AttributeMask, PunctuationStaysOutsideTheMask) {
  SeedStream rng(7);
  const MaskedText m = mask_tokens("(biased), ok", 1.0, rng);
  EXPECT_EQ(m.masked, "([MASK]), [MASK]");
  EXPECT_EQ(m.target, "biased ok");
  EXPECT_THROW(mask_tokens("one", 0.3, rng), ValidationError);
  EXPECT_THROW(mask_tokens("a b c", 0.0, rng), ValidationError);
}

TEST(AttributeMask, EpisodeVerifiesCanonicalAnswer) {
  const TextAttributedGraph g = fixture();
  SeedStream rng(8);
  for (const auto& node : g.nodes()) {
    const auto e =
        attribute_mask_for_node(g, node.id, preset(Difficulty::kStandard), {}, rng, kCtx);
    EXPECT_TRUE(e.record.images.empty());
    EXPECT_NE(e.record.graph_context.find("Masked node: " + node.id), std::string::npos);
    EXPECT_EQ(e.record.graph_context.find(node.text), std::string::npos);
    std::string upper = *e.record.target;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    EXPECT_EQ(verify(e.record, render_answer(upper + ".")).reward, 1);
    EXPECT_NO_THROW(validate(e.record));
  }
}

}  // namespace
}  // namespace pretextrl
