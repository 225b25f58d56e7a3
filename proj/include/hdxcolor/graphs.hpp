// Copyright 2026 The Authors.
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

#ifndef HDXCOLOR_GRAPHS_HPP_
#define HDXCOLOR_GRAPHS_HPP_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hdxcolor {

// Undirected edge stored as (min endpoint, max endpoint).
using Edge = std::pair<int, int>;

// Simple undirected graph with sorted adjacency lists. Edge ids follow the
// lexicographic order of (min endpoint, max endpoint).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  // Throws InvalidInput on self-loops, parallel edges or out-of-range ids.
  static Graph from_edges(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  int max_degree() const;
  bool adjacent(int u, int v) const;

  const std::vector<Edge>& edges() const { return edges_; }
  // Id of edge {u, v}; throws InvalidInput if absent.
  int edge_id(int u, int v) const;

  // Component label per vertex restricted to `active` vertices; inactive
  // vertices get -1. Labels are dense and ordered by smallest member.
  std::vector<int> component_labels(const std::vector<bool>& active) const;
  bool is_connected() const;
  bool is_tree() const;

  // Same vertex set, keeping only edges with both endpoints in `keep`.
  Graph induced(const std::vector<bool>& keep) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<Edge> edges_;
};

// One vertex per edge of g (in edge-id order); two are adjacent iff the
// edges share an endpoint.
Graph line_graph(const Graph& g);

// Number of edges sharing an endpoint with e: deg(u) + deg(v) - 2.
int edge_degree(const Graph& g, Edge e);

enum class ElementKind { kVertex, kEdge };

const char* to_string(ElementKind kind);
ElementKind parse_element_kind(const std::string& text);

// A graph with an admissible color list per element. Elements are vertices
// (kVertex) or edges in edge-id order (kEdge). Colors are 1..q.
class ListColoringInstance {
 public:
  ListColoringInstance(ElementKind kind, Graph graph, std::vector<std::vector<int>> lists);

  // Every list is [1..q].
  static ListColoringInstance uniform(ElementKind kind, Graph graph, int q);

  ElementKind kind() const { return kind_; }
  const Graph& graph() const { return graph_; }
  // Adjacency between elements: the graph itself, or its line graph.
  const Graph& conflict_graph() const { return conflict_; }
  int element_count() const { return static_cast<int>(lists_.size()); }
  const std::vector<std::vector<int>>& lists() const { return lists_; }
  const std::vector<int>& list(int element) const { return lists_.at(element); }
  int palette_size() const { return palette_; }
  // Delta(x): vertex degree or edge degree.
  int element_degree(int element) const { return conflict_.degree(element); }
  // Max degree of the underlying graph (not of the line graph).
  int max_degree() const { return graph_.max_degree(); }

 private:
  ElementKind kind_;
  Graph graph_;
  Graph conflict_;
  std::vector<std::vector<int>> lists_;
  int palette_ = 0;
};

// True iff |L(x)| >= beta + Delta(x) for every element.
bool is_beta_extra(const ListColoringInstance& inst, double beta);

// element id -> color.
using PartialColoring = std::map<int, int>;

// The instance left after fixing a proper partial coloring.
struct ResidualInstance {
  PartialColoring fixed;
  // kVertex: induced on uncolored vertices (original ids, colored vertices
  // isolated). kEdge: (V, E_tau), the uncolored edges on the full vertex set.
  Graph residual_graph;
  std::vector<int> uncolored;
  // Indexed by original element id; empty for colored elements.
  std::vector<std::vector<int>> residual_lists;
  ElementKind kind = ElementKind::kVertex;

  // The residual as a standalone instance. For kVertex, uncolored vertices
  // are renumbered in increasing order; for kEdge the vertex set is kept and
  // uncolored edges are renumbered. element_map[new] = original id.
  ListColoringInstance as_instance(std::vector<int>* element_map = nullptr) const;
};

// Throws InvalidInput if tau is improper, uses an unlisted color, or names
// an unknown element.
ResidualInstance residual(const ListColoringInstance& inst, const PartialColoring& tau);

// Checks that `coloring` (element -> color) is a proper list coloring on
// its domain.
bool is_proper(const ListColoringInstance& inst, const PartialColoring& coloring);

}  // namespace hdxcolor

#endif  // HDXCOLOR_GRAPHS_HPP_
