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

#ifndef PRETEXTRL_GRAPH_HPP_
#define PRETEXTRL_GRAPH_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pretextrl {

struct GraphNode {
  std::string id;
  std::string text;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

using Edge = std::pair<std::string, std::string>;

// Nodes with free-text attributes plus an edge list. Node ids are unique,
// nonempty and contain no whitespace or commas; every edge endpoint exists;
// no self-loops. Task corruptions work on the undirected view regardless of
// `directed`, and duplicate undirected edges collapse to one.
class TextAttributedGraph {
 public:
  TextAttributedGraph(std::vector<GraphNode> nodes, std::vector<Edge> edges,
                      bool directed = false);

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool directed() const { return directed_; }
  std::size_t size() const { return nodes_.size(); }

  std::optional<std::size_t> find(std::string_view id) const;
  // Throws ValidationError for unknown ids.
  std::size_t index_of(std::string_view id) const;
  // Undirected neighbor indices in node order.
  const std::vector<std::size_t>& neighbors(std::size_t index) const {
    return adjacency_[index];
  }
  bool has_edge(std::size_t u, std::size_t v) const;

  friend bool operator==(const TextAttributedGraph& a, const TextAttributedGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ && a.directed_ == b.directed_;
  }

 private:
  std::vector<GraphNode> nodes_;
  std::vector<Edge> edges_;
  bool directed_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

// Subgraph induced on `keep` (indices into g), preserving g's node order,
// minus any edge listed in `drop` (undirected match).
TextAttributedGraph induced_subgraph(const TextAttributedGraph& g,
                                     const std::vector<std::size_t>& keep,
                                     const std::vector<Edge>& drop = {});

// Indices within `hops` of center by breadth-first search, in node order.
std::vector<std::size_t> nodes_within(const TextAttributedGraph& g, std::size_t center,
                                      int hops);

// Induced subgraph on the nodes within `hops` of center.
TextAttributedGraph ego_subgraph(const TextAttributedGraph& g, std::string_view center,
                                 int hops);

// Adjacency section followed by a description section:
//   Graph:
//   a: b, c
//   Node descriptions:
//   a — "text of a"
std::string serialize_graph(const TextAttributedGraph& g);

// Edge list "u<TAB>v" per line and attributes "id<TAB>text" per line.
TextAttributedGraph read_graph(const std::filesystem::path& edges_path,
                               const std::filesystem::path& nodes_path,
                               bool directed = false);
void write_graph(const TextAttributedGraph& g, const std::filesystem::path& edges_path,
                 const std::filesystem::path& nodes_path);

}  // namespace pretextrl

#endif  // PRETEXTRL_GRAPH_HPP_
