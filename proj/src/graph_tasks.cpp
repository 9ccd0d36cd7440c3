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

#include "pretextrl/graph_tasks.hpp"

#include <algorithm>
#include <cmath>

#include "pretextrl/error.hpp"
#include "pretextrl/prompts.hpp"
#include "pretextrl/text.hpp"

namespace pretextrl {
namespace {

constexpr std::string_view kCandidatesPrefix = "Candidates: ";

struct TokenParts {
  std::string_view prefix;
  std::string_view core;
  std::string_view suffix;
};

TokenParts split_token(std::string_view tok) {
  std::size_t b = 0;
  while (b < tok.size() && is_ascii_punct(tok[b])) ++b;
  std::size_t e = tok.size();
  while (e > b && is_ascii_punct(tok[e - 1])) --e;
  return {tok.substr(0, b), tok.substr(b, e - b), tok.substr(e)};
}

int mask_count(double fraction, int tokens) {
  return static_cast<int>(std::floor(fraction * tokens + 1e-9));
}

void finalize_graph(GeneratedEpisode& g, Task task, const DifficultyPreset& p,
                    std::string target, std::string graph_context,
                    const EpisodeContext& ctx) {
  EpisodeRecord& r = g.record;
  r.task = task;
  r.difficulty = p.name;
  r.seed = ctx.seed;
  r.id = episode_id(task, p.name, ctx.seed, target);
  r.target = std::move(target);
  r.graph_context = std::move(graph_context);
  r.prompt = render_prompt(r);
  validate(r);
}

}  // namespace

int maskable_token_count(std::string_view text) {
  int n = 0;
  for (const auto& tok : split_whitespace(text)) n += !split_token(tok).core.empty();
  return n;
}

MaskedText mask_tokens(std::string_view text, double fraction, SeedStream& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ValidationError("mask fraction must lie in (0,1]");
  }
  const std::vector<std::string> tokens = split_whitespace(text);
  std::vector<std::size_t> maskable;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!split_token(tokens[i]).core.empty()) maskable.push_back(i);
  }
  const int k = mask_count(fraction, static_cast<int>(maskable.size()));
  if (k < 1) {
    throw ValidationError("text too short to mask a token at fraction " +
                          std::to_string(fraction));
  }
  std::vector<std::size_t> chosen = rng.sample_without_replacement(maskable.size(), k);
  std::sort(chosen.begin(), chosen.end());
  std::vector<std::string> out_tokens = tokens;
  std::vector<std::string> hidden;
  for (std::size_t c : chosen) {
    const std::size_t i = maskable[c];
    const TokenParts parts = split_token(tokens[i]);
    hidden.push_back(to_lower_ascii(parts.core));
    out_tokens[i] = std::string(parts.prefix) + std::string(kMaskToken) +
                    std::string(parts.suffix);
  }
  return {join(out_tokens, " "), canonical_text(join(hidden, " ")), k};
}

std::string reinsert_masked(std::string_view masked, std::string_view target) {
  const std::vector<std::string> words = split_whitespace(target);
  std::string out;
  std::size_t next = 0;
  std::size_t pos = 0;
  while (pos <= masked.size()) {
    const std::size_t hit = masked.find(kMaskToken, pos);
    if (hit == std::string_view::npos) {
      out += masked.substr(pos);
      break;
    }
    if (next >= words.size()) throw ValidationError("reinsert: fewer words than masks");
    out += masked.substr(pos, hit - pos);
    out += words[next++];
    pos = hit + kMaskToken.size();
  }
  if (next != words.size()) throw ValidationError("reinsert: more words than masks");
  return out;
}

GeneratedEpisode attribute_mask_for_node(const TextAttributedGraph& g,
                                         std::string_view node, const DifficultyPreset& p,
                                         const GraphTaskConfig& cfg, SeedStream& rng,
                                         const EpisodeContext& ctx) {
  const std::size_t center = g.index_of(node);
  const std::string& text = g.nodes()[center].text;
  if (trim(text).empty()) {
    throw ValidationError("attribute mask: node " + std::string(node) + " has no text");
  }
  MaskedText m = mask_tokens(text, cfg.mask_fraction, rng);

  const std::vector<std::size_t> keep = nodes_within(g, center, cfg.hops);
  TextAttributedGraph shown = induced_subgraph(g, keep);
  std::vector<GraphNode> nodes = shown.nodes();
  for (auto& n : nodes) {
    if (n.id == node) n.text = m.masked;
  }
  shown = TextAttributedGraph(std::move(nodes), shown.edges(), g.directed());

  GeneratedEpisode e;
  std::string context = serialize_graph(shown) + "\nMasked node: " + std::string(node);
  finalize_graph(e, Task::kAttributeMask, p, std::move(m.target), std::move(context), ctx);
  return e;
}

GeneratedEpisode make_attribute_mask_episode(const TextAttributedGraph& g,
                                             const DifficultyPreset& p,
                                             const GraphTaskConfig& cfg, SeedStream& rng,
                                             const EpisodeContext& ctx) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (mask_count(cfg.mask_fraction, maskable_token_count(g.nodes()[i].text)) >= 1) {
      eligible.push_back(i);
    }
  }
  if (eligible.empty()) {
    throw ValidationError("attribute mask: no node text long enough to mask a token");
  }
  const std::size_t pick = eligible[rng.uniform_index(eligible.size())];
  return attribute_mask_for_node(g, g.nodes()[pick].id, p, cfg, rng, ctx);
}

namespace {

std::size_t negatives_for(const GraphTaskConfig& cfg, std::size_t degree) {
  return cfg.negatives > 0 ? static_cast<std::size_t>(cfg.negatives) : degree;
}

}  // namespace

GeneratedEpisode neighbor_for_node(const TextAttributedGraph& g, std::string_view node,
                                   const DifficultyPreset& p, const GraphTaskConfig& cfg,
                                   SeedStream& rng, const EpisodeContext& ctx) {
  const std::size_t center = g.index_of(node);
  const auto& adj = g.neighbors(center);
  if (adj.empty()) {
    throw ValidationError("neighbor: node " + std::string(node) + " has no neighbors");
  }
  std::vector<std::size_t> non_neighbors;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i != center && !g.has_edge(center, i)) non_neighbors.push_back(i);
  }
  const std::size_t m = negatives_for(cfg, adj.size());
  if (non_neighbors.size() < m) {
    throw ValidationError("neighbor: node " + std::string(node) + " has " +
                          std::to_string(non_neighbors.size()) +
                          " non-neighbors, need " + std::to_string(m));
  }
  std::vector<std::size_t> candidates(adj.begin(), adj.end());
  for (std::size_t k : rng.sample_without_replacement(non_neighbors.size(), m)) {
    candidates.push_back(non_neighbors[k]);
  }
  rng.shuffle(candidates);

  std::vector<std::size_t> keep = nodes_within(g, center, cfg.hops);
  keep.insert(keep.end(), candidates.begin(), candidates.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<Edge> withheld;
  for (std::size_t v : adj) withheld.emplace_back(g.nodes()[center].id, g.nodes()[v].id);
  const TextAttributedGraph shown = induced_subgraph(g, keep, withheld);

  std::vector<std::string> candidate_ids;
  for (std::size_t c : candidates) candidate_ids.push_back(g.nodes()[c].id);
  std::vector<std::string> truth;
  for (std::size_t v : adj) truth.push_back(g.nodes()[v].id);
  std::sort(truth.begin(), truth.end());

  std::string context = serialize_graph(shown) + "\nTarget node: " + std::string(node) +
                        "\n" + std::string(kCandidatesPrefix) + join(candidate_ids, ", ");
  GeneratedEpisode e;
  finalize_graph(e, Task::kNeighbor, p, join(truth, ","), std::move(context), ctx);
  return e;
}

GeneratedEpisode make_neighbor_episode(const TextAttributedGraph& g,
                                       const DifficultyPreset& p,
                                       const GraphTaskConfig& cfg, SeedStream& rng,
                                       const EpisodeContext& ctx) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t deg = g.neighbors(i).size();
    if (deg >= 1 && g.size() - 1 - deg >= negatives_for(cfg, deg)) eligible.push_back(i);
  }
  if (eligible.empty()) {
    throw ValidationError("neighbor: no node has enough non-neighbors to sample");
  }
  const std::size_t pick = eligible[rng.uniform_index(eligible.size())];
  return neighbor_for_node(g, g.nodes()[pick].id, p, cfg, rng, ctx);
}

GeneratedEpisode make_link_episode(const TextAttributedGraph& g, const DifficultyPreset& p,
                                   const GraphTaskConfig& cfg, SeedStream& rng,
                                   const EpisodeContext& ctx) {
  const std::size_t n = g.size();
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (g.edges().empty() || g.edges().size() >= pairs) {
    throw ValidationError("link: graph must have at least one edge and one non-edge");
  }
  const bool positive = rng.bernoulli(0.5);
  std::size_t u = 0;
  std::size_t v = 0;
  if (positive) {
    const Edge& e = g.edges()[rng.uniform_index(g.edges().size())];
    u = g.index_of(e.first);
    v = g.index_of(e.second);
  } else {
    // Uniform over unordered non-adjacent pairs by rank.
    std::uint64_t rank = rng.uniform_index(pairs - g.edges().size());
    bool found = false;
    for (std::size_t a = 0; a < n && !found; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (g.has_edge(a, b)) continue;
        if (rank-- == 0) {
          u = a;
          v = b;
          found = true;
          break;
        }
      }
    }
  }
  std::vector<std::size_t> keep = nodes_within(g, u, cfg.hops);
  const auto around_v = nodes_within(g, v, cfg.hops);
  keep.insert(keep.end(), around_v.begin(), around_v.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<Edge> withheld;
  if (positive) withheld.emplace_back(g.nodes()[u].id, g.nodes()[v].id);
  const TextAttributedGraph shown = induced_subgraph(g, keep, withheld);

  std::string context = serialize_graph(shown) + "\nNode pair: " + g.nodes()[u].id + ", " +
                        g.nodes()[v].id;
  GeneratedEpisode e;
  e.record.answer_space = std::vector<std::string>{"yes", "no"};
  finalize_graph(e, Task::kLink, p, positive ? "yes" : "no", std::move(context), ctx);
  return e;
}

std::vector<std::string> neighbor_candidates(const EpisodeRecord& episode) {
  const std::string& ctx = episode.graph_context;
  const auto pos = ctx.rfind(kCandidatesPrefix);
  if (pos == std::string::npos) return {};
  std::string_view rest = std::string_view(ctx).substr(pos + kCandidatesPrefix.size());
  rest = rest.substr(0, rest.find('\n'));
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= rest.size()) {
    const std::size_t comma = std::min(rest.find(',', start), rest.size());
    const auto tok = trim(rest.substr(start, comma - start));
    if (!tok.empty()) out.emplace_back(tok);
    start = comma + 1;
  }
  return out;
}

}  // namespace pretextrl
