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

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>

#include "pretextrl/error.hpp"

namespace pretextrl {
namespace fs = std::filesystem;

namespace {

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

}  // namespace

TextAttributedGraph::TextAttributedGraph(std::vector<GraphNode> nodes,
                                         std::vector<Edge> edges, bool directed)
    : nodes_(std::move(nodes)), directed_(directed) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!valid_id(nodes_[i].id)) {
      throw ValidationError("graph: invalid node id '" + nodes_[i].id + "'");
    }
    if (!index_.emplace(nodes_[i].id, i).second) {
      throw ValidationError("graph: duplicate node id " + nodes_[i].id);
    }
  }
  adjacency_.resize(nodes_.size());
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto& e : edges) {
    const auto u = find(e.first);
    const auto v = find(e.second);
    if (!u || !v) {
      throw ValidationError("graph: edge (" + e.first + "," + e.second +
                            ") has an unknown endpoint");
    }
    if (*u == *v) throw ValidationError("graph: self-loop on " + e.first);
    const auto key = std::minmax(*u, *v);
    if (!seen.insert(key).second) continue;
    adjacency_[*u].push_back(*v);
    adjacency_[*v].push_back(*u);
    edges_.push_back(std::move(e));
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

std::optional<std::size_t> TextAttributedGraph::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t TextAttributedGraph::index_of(std::string_view id) const {
  const auto i = find(id);
  if (!i) throw ValidationError("graph: unknown node " + std::string(id));
  return *i;
}

bool TextAttributedGraph::has_edge(std::size_t u, std::size_t v) const {
  const auto& adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

TextAttributedGraph induced_subgraph(const TextAttributedGraph& g,
                                     const std::vector<std::size_t>& keep,
                                     const std::vector<Edge>& drop) {
  std::vector<bool> kept(g.size(), false);
  for (std::size_t i : keep) kept.at(i) = true;
  std::set<std::pair<std::size_t, std::size_t>> dropped;
  for (const auto& e : drop) {
    const auto u = g.find(e.first);
    const auto v = g.find(e.second);
    if (u && v) dropped.insert(std::minmax(*u, *v));
  }
  std::vector<GraphNode> nodes;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (kept[i]) nodes.push_back(g.nodes()[i]);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    const std::size_t u = g.index_of(e.first);
    const std::size_t v = g.index_of(e.second);
    if (kept[u] && kept[v] && !dropped.contains(std::minmax(u, v))) edges.push_back(e);
  }
  return TextAttributedGraph(std::move(nodes), std::move(edges), g.directed());
}

std::vector<std::size_t> nodes_within(const TextAttributedGraph& g, std::size_t center,
                                      int hops) {
  std::vector<int> dist(g.size(), -1);
  std::deque<std::size_t> queue{center};
  dist[center] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (dist[u] == hops) continue;
    for (std::size_t v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (dist[i] >= 0) out.push_back(i);
  }
  return out;
}

TextAttributedGraph ego_subgraph(const TextAttributedGraph& g, std::string_view center,
                                 int hops) {
  if (hops < 1) throw ValidationError("ego_subgraph: hops must be >= 1");
  return induced_subgraph(g, nodes_within(g, g.index_of(center), hops));
}

std::string serialize_graph(const TextAttributedGraph& g) {
  std::string out = "Graph:\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += g.nodes()[i].id;
    out += ':';
    const auto& adj = g.neighbors(i);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      out += k ? ", " : " ";
      out += g.nodes()[adj[k]].id;
    }
    out += '\n';
  }
  out += "Node descriptions:";
  for (const auto& n : g.nodes()) {
    out += '\n';
    out += n.id;
    out += " — \"";
    out += n.text;
    out += '"';
  }
  return out;
}

TextAttributedGraph read_graph(const fs::path& edges_path, const fs::path& nodes_path,
                               bool directed) {
  std::ifstream nodes_in(nodes_path);
  if (!nodes_in) throw IoError("cannot open node file " + nodes_path.string());
  std::vector<GraphNode> nodes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(nodes_in, line)) {
    ++lineno;
    const std::string_view s = strip_cr(line);
    if (s.empty()) continue;
    const auto tab = s.find('\t');
    if (tab == std::string_view::npos) {
      throw ValidationError(nodes_path.string() + ":" + std::to_string(lineno) +
                            ": expected id<TAB>text");
    }
    nodes.push_back({std::string(s.substr(0, tab)), std::string(s.substr(tab + 1))});
  }
  std::ifstream edges_in(edges_path);
  if (!edges_in) throw IoError("cannot open edge file " + edges_path.string());
  std::vector<Edge> edges;
  lineno = 0;
  while (std::getline(edges_in, line)) {
    ++lineno;
    const std::string_view s = strip_cr(line);
    if (s.empty()) continue;
    const auto tab = s.find('\t');
    if (tab == std::string_view::npos) {
      throw ValidationError(edges_path.string() + ":" + std::to_string(lineno) +
                            ": expected u<TAB>v");
    }
    edges.emplace_back(std::string(s.substr(0, tab)), std::string(s.substr(tab + 1)));
  }
  return TextAttributedGraph(std::move(nodes), std::move(edges), directed);
}

void write_graph(const TextAttributedGraph& g, const fs::path& edges_path,
                 const fs::path& nodes_path) {
  std::ofstream e(edges_path, std::ios::trunc);
  std::ofstream n(nodes_path, std::ios::trunc);
  if (!e || !n) throw IoError("cannot write graph files");
  for (const auto& [u, v] : g.edges()) e << u << '\t' << v << '\n';
  for (const auto& node : g.nodes()) n << node.id << '\t' << node.text << '\n';
}

}  // namespace pretextrl
