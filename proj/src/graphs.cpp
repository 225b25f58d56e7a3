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

#include "hdxcolor/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "hdxcolor/errors.hpp"

namespace hdxcolor {

Graph::Graph(int vertex_count) {
  if (vertex_count < 0) throw InvalidInput("negative vertex count");
  adjacency_.resize(vertex_count);
}

Graph Graph::from_edges(int vertex_count, std::span<const Edge> edges) {
  Graph g(vertex_count);
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) {
      throw InvalidInput("edge endpoint out of range: " + std::to_string(a) + " " +
                         std::to_string(b));
    }
    if (a == b) throw InvalidInput("self-loop at vertex " + std::to_string(a));
    Edge e{std::min(a, b), std::max(a, b)};
    if (!seen.insert(e).second) {
      throw InvalidInput("parallel edge " + std::to_string(e.first) + " " +
                         std::to_string(e.second));
    }
  }
  g.edges_.assign(seen.begin(), seen.end());
  for (auto [u, v] : g.edges_) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

int Graph::max_degree() const {
  int best = 0;
  for (const auto& nbrs : adjacency_) best = std::max(best, static_cast<int>(nbrs.size()));
  return best;
}

bool Graph::adjacent(int u, int v) const {
  const auto& nbrs = adjacency_.at(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

int Graph::edge_id(int u, int v) const {
  Edge e{std::min(u, v), std::max(u, v)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) {
    throw InvalidInput("unknown edge " + std::to_string(u) + " " + std::to_string(v));
  }
  return static_cast<int>(it - edges_.begin());
}

std::vector<int> Graph::component_labels(const std::vector<bool>& active) const {
  const int n = vertex_count();
  std::vector<int> label(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (!active[s] || label[s] != -1) continue;
    std::queue<int> frontier;
    frontier.push(s);
    label[s] = next;
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (int w : adjacency_[v]) {
        if (active[w] && label[w] == -1) {
          label[w] = next;
          frontier.push(w);
        }
      }
    }
    ++next;
  }
  return label;
}

bool Graph::is_connected() const {
  if (vertex_count() == 0) return true;
  auto labels = component_labels(std::vector<bool>(vertex_count(), true));
  return *std::max_element(labels.begin(), labels.end()) == 0;
}

bool Graph::is_tree() const { return is_connected() && edge_count() == vertex_count() - 1; }

Graph Graph::induced(const std::vector<bool>& keep) const {
  std::vector<Edge> kept;
  for (auto [u, v] : edges_) {
    if (keep[u] && keep[v]) kept.emplace_back(u, v);
  }
  return from_edges(vertex_count(), kept);
}

Graph line_graph(const Graph& g) {
  std::vector<Edge> adj;
  const auto& edges = g.edges();
  // Edges at a common endpoint are pairwise adjacent in the line graph.
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> incident;
    for (int w : g.neighbors(v)) incident.push_back(g.edge_id(v, w));
    for (std::size_t i = 0; i < incident.size(); ++i) {
      for (std::size_t j = i + 1; j < incident.size(); ++j) {
        adj.emplace_back(std::min(incident[i], incident[j]), std::max(incident[i], incident[j]));
      }
    }
  }
  std::sort(adj.begin(), adj.end());
  adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  return Graph::from_edges(static_cast<int>(edges.size()), adj);
}

int edge_degree(const Graph& g, Edge e) {
  g.edge_id(e.first, e.second);
  return g.degree(e.first) + g.degree(e.second) - 2;
}

const char* to_string(ElementKind kind) {
  return kind == ElementKind::kVertex ? "vertex" : "edge";
}

ElementKind parse_element_kind(const std::string& text) {
  if (text == "vertex") return ElementKind::kVertex;
  if (text == "edge") return ElementKind::kEdge;
  throw InvalidInput("unknown element kind '" + text + "' (expected vertex or edge)");
}

ListColoringInstance::ListColoringInstance(ElementKind kind, Graph graph,
                                           std::vector<std::vector<int>> lists)
    : kind_(kind), graph_(std::move(graph)), lists_(std::move(lists)) {
  conflict_ = kind_ == ElementKind::kVertex ? graph_ : line_graph(graph_);
  const int expected = kind_ == ElementKind::kVertex ? graph_.vertex_count() : graph_.edge_count();
  if (static_cast<int>(lists_.size()) != expected) {
    throw InvalidInput("expected " + std::to_string(expected) + " color lists, got " +
                       std::to_string(lists_.size()));
  }
  for (std::size_t x = 0; x < lists_.size(); ++x) {
    auto& l = lists_[x];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    if (l.empty()) throw InvalidInput("empty color list for element " + std::to_string(x));
    if (l.front() < 1) throw InvalidInput("colors must be >= 1 (element " + std::to_string(x) + ")");
    palette_ = std::max(palette_, l.back());
  }
}

ListColoringInstance ListColoringInstance::uniform(ElementKind kind, Graph graph, int q) {
  if (q < 1) throw InvalidInput("palette size must be positive");
  const int count = kind == ElementKind::kVertex ? graph.vertex_count() : graph.edge_count();
  std::vector<int> all(q);
  std::iota(all.begin(), all.end(), 1);
  return ListColoringInstance(kind, std::move(graph), std::vector<std::vector<int>>(count, all));
}

bool is_beta_extra(const ListColoringInstance& inst, double beta) {
  constexpr double kSlack = 1e-9;
  for (int x = 0; x < inst.element_count(); ++x) {
    if (static_cast<double>(inst.list(x).size()) + kSlack < beta + inst.element_degree(x)) {
      return false;
    }
  }
  return true;
}

bool is_proper(const ListColoringInstance& inst, const PartialColoring& coloring) {
  for (auto [x, c] : coloring) {
    if (x < 0 || x >= inst.element_count()) return false;
    const auto& l = inst.list(x);
    if (!std::binary_search(l.begin(), l.end(), c)) return false;
    for (int y : inst.conflict_graph().neighbors(x)) {
      auto it = coloring.find(y);
      if (it != coloring.end() && it->second == c) return false;
    }
  }
  return true;
}

ResidualInstance residual(const ListColoringInstance& inst, const PartialColoring& tau) {
  for (auto [x, c] : tau) {
    if (x < 0 || x >= inst.element_count()) {
      throw InvalidInput("partial coloring names unknown element " + std::to_string(x));
    }
  }
  if (!is_proper(inst, tau)) throw InvalidInput("partial coloring is improper or off-list");

  ResidualInstance r;
  r.fixed = tau;
  r.kind = inst.kind();
  const int count = inst.element_count();
  r.residual_lists.resize(count);
  std::vector<bool> open(count, false);
  for (int x = 0; x < count; ++x) {
    if (tau.count(x)) continue;
    open[x] = true;
    r.uncolored.push_back(x);
    std::set<int> blocked;
    for (int y : inst.conflict_graph().neighbors(x)) {
      auto it = tau.find(y);
      if (it != tau.end()) blocked.insert(it->second);
    }
    for (int c : inst.list(x)) {
      if (!blocked.count(c)) r.residual_lists[x].push_back(c);
    }
  }
  if (inst.kind() == ElementKind::kVertex) {
    r.residual_graph = inst.graph().induced(open);
  } else {
    std::vector<Edge> kept;
    for (int x : r.uncolored) kept.push_back(inst.graph().edges()[x]);
    r.residual_graph = Graph::from_edges(inst.graph().vertex_count(), kept);
  }
  return r;
}

ListColoringInstance ResidualInstance::as_instance(std::vector<int>* element_map) const {
  std::vector<std::vector<int>> lists;
  for (int x : uncolored) lists.push_back(residual_lists[x]);
  if (element_map) *element_map = uncolored;
  if (kind == ElementKind::kEdge) {
    return ListColoringInstance(kind, residual_graph, std::move(lists));
  }
  std::vector<int> renumber(residual_graph.vertex_count(), -1);
  for (std::size_t i = 0; i < uncolored.size(); ++i) renumber[uncolored[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : residual_graph.edges()) edges.emplace_back(renumber[u], renumber[v]);
  return ListColoringInstance(kind, Graph::from_edges(static_cast<int>(uncolored.size()), edges),
                              std::move(lists));
}

}  // namespace hdxcolor
