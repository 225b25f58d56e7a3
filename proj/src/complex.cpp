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

#include "hdxcolor/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hdxcolor/errors.hpp"

namespace hdxcolor {
namespace {

// Budget for subset enumeration when building the face table.
constexpr long long kFaceTableBudget = 40'000'000;

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

}  // namespace

std::vector<int> Face::indices() const {
  std::vector<int> out;
  for (int i = 0; i < kMaxGround; ++i) {
    if (bits_.test(i)) out.push_back(i);
  }
  return out;
}

bool operator<(const Face& a, const Face& b) {
  for (int i = 0; i < kMaxGround; ++i) {
    if (a.bits_.test(i) != b.bits_.test(i)) return b.bits_.test(i);
  }
  return false;
}

std::size_t Face::hash() const { return std::hash<std::bitset<kMaxGround>>{}(bits_); }

WeightedComplex WeightedComplex::from_colorings(std::vector<int> element_labels,
                                                const std::vector<std::vector<int>>& facets,
                                                std::vector<double> weights, Graph interaction) {
  const int n = static_cast<int>(element_labels.size());
  if (n == 0) throw InvalidInput("complex needs at least one element");
  if (std::set<int>(element_labels.begin(), element_labels.end()).size() != element_labels.size()) {
    throw InvalidInput("duplicate element labels");
  }
  if (facets.empty()) throw EmptyComplex("complex has no facets");
  if (facets.size() != weights.size()) throw InvalidInput("facet and weight counts differ");
  if (interaction.vertex_count() != n) throw InvalidInput("interaction graph size mismatch");

  WeightedComplex X;
  X.element_labels_ = std::move(element_labels);
  X.interaction_ = std::move(interaction);

  std::set<std::pair<int, int>> pairs;
  for (const auto& f : facets) {
    if (static_cast<int>(f.size()) != n) throw InvalidInput("facet size differs from element count");
    for (int e = 0; e < n; ++e) pairs.emplace(e, f[e]);
  }
  if (static_cast<int>(pairs.size()) > kMaxGround) {
    throw ResourceLimit("ground set has " + std::to_string(pairs.size()) +
                        " pairs; at most " + std::to_string(kMaxGround) + " are supported");
  }
  X.ground_offset_.assign(n + 1, 0);
  for (auto [e, c] : pairs) {
    X.ground_.push_back({e, c});
    ++X.ground_offset_[e + 1];
  }
  std::partial_sum(X.ground_offset_.begin(), X.ground_offset_.end(), X.ground_offset_.begin());

  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidInput("facet weights must be positive");
    total += w;
  }
  std::set<Face> seen;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    Face face;
    for (int e = 0; e < n; ++e) face = face.with(X.ground_index(e, facets[i][e]));
    if (!seen.insert(face).second) throw InvalidInput("duplicate facet");
    X.facets_.push_back(face);
    X.weights_.push_back(weights[i] / total);
  }
  return X;
}

int WeightedComplex::ground_index(int element, int color) const {
  if (element < 0 || element >= element_count()) return -1;
  auto first = ground_.begin() + ground_offset_[element];
  auto last = ground_.begin() + ground_offset_[element + 1];
  auto it = std::lower_bound(first, last, color,
                             [](const GroundPair& p, int c) { return p.color < c; });
  if (it == last || it->color != color) return -1;
  return static_cast<int>(it - ground_.begin());
}

void WeightedComplex::build_face_table() const {
  std::call_once(table_->once, [this] {
    const int n = element_count();
    if (n >= 40 ||
        static_cast<long long>(facets_.size()) * (1LL << n) > kFaceTableBudget) {
      throw ResourceLimit("face table too large: " + std::to_string(facets_.size()) +
                          " facets with " + std::to_string(n) + " elements");
    }
    auto& table = table_->weights;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      std::vector<int> idx = facets_[f].indices();
      for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        Face sub;
        for (int b = 0; b < n; ++b) {
          if (mask >> b & 1ULL) sub = sub.with(idx[b]);
        }
        table[sub] += weights_[f];
      }
    }
  });
}

double WeightedComplex::weight(const Face& face) const {
  build_face_table();
  auto it = table_->weights.find(face);
  return it == table_->weights.end() ? 0.0 : it->second;
}

std::size_t WeightedComplex::face_count() const {
  build_face_table();
  return table_->weights.size();
}

std::vector<Face> WeightedComplex::faces_of_codim(int k) const {
  build_face_table();
  std::vector<Face> out;
  for (const auto& [face, w] : table_->weights) {
    if (codim(face) == k) out.push_back(face);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> WeightedComplex::uncolored(const Face& face) const {
  std::vector<bool> colored(element_count(), false);
  for (int i : face.indices()) colored[ground_[i].element] = true;
  std::vector<int> out;
  for (int e = 0; e < element_count(); ++e) {
    if (!colored[e]) out.push_back(e);
  }
  return out;
}

std::vector<int> WeightedComplex::support(const Face& face) const {
  std::vector<int> out;
  for (int e : uncolored(face)) {
    for (int i = ground_offset_[e]; i < ground_offset_[e + 1]; ++i) {
      if (weight(face.with(i)) > 0.0) out.push_back(i);
    }
  }
  return out;
}

std::vector<std::vector<int>> WeightedComplex::components(const Face& face) const {
  std::vector<bool> active(element_count(), false);
  for (int e : uncolored(face)) active[e] = true;
  std::vector<int> labels = interaction_.component_labels(active);
  int count = 0;
  for (int l : labels) count = std::max(count, l + 1);
  std::vector<std::vector<int>> out(count);
  for (int e = 0; e < element_count(); ++e) {
    if (labels[e] >= 0) out[labels[e]].push_back(e);
  }
  return out;
}

std::string WeightedComplex::key(const Face& face) const {
  std::vector<std::pair<int, int>> pairs;
  for (int i : face.indices()) pairs.emplace_back(element_labels_[ground_[i].element], ground_[i].color);
  std::sort(pairs.begin(), pairs.end());
  std::string out;
  for (auto [label, color] : pairs) {
    if (!out.empty()) out += ',';
    out += std::to_string(label) + ':' + std::to_string(color);
  }
  return out;
}

Face WeightedComplex::parse_key(const std::string& key) const {
  Face face;
  if (key.empty()) return face;
  std::stringstream in(key);
  std::string token;
  while (std::getline(in, token, ',')) {
    auto colon = token.find(':');
    if (colon == std::string::npos) throw InvalidInput("bad face key '" + key + "'");
    int label = std::stoi(token.substr(0, colon));
    int color = std::stoi(token.substr(colon + 1));
    auto it = std::find(element_labels_.begin(), element_labels_.end(), label);
    int idx = it == element_labels_.end() ? -1
                                          : ground_index(static_cast<int>(it - element_labels_.begin()), color);
    if (idx < 0) throw InvalidInput("face key names unknown pair " + token);
    face = face.with(idx);
  }
  return face;
}

Face WeightedComplex::face_from(std::span<const GroundPair> pairs) const {
  Face face;
  for (const auto& p : pairs) {
    int idx = ground_index(p.element, p.color);
    if (idx < 0) {
      throw InvalidInput("pair " + std::to_string(p.element) + ":" + std::to_string(p.color) +
                         " is not in the ground set");
    }
    face = face.with(idx);
  }
  return face;
}

WeightedComplex WeightedComplex::relabel_elements(int offset) const {
  WeightedComplex out = *this;
  for (int& l : out.element_labels_) l += offset;
  out.table_ = std::make_shared<FaceTable>();
  return out;
}

WeightedComplex build_complex(const ListColoringInstance& inst, long long facet_limit) {
  const int n = inst.element_count();
  if (n == 0) throw InvalidInput("instance has no elements");
  const Graph& conflict = inst.conflict_graph();
  std::vector<std::vector<int>> facets;
  std::vector<int> coloring(n, 0);
  // Iterative backtracking over elements in id order.
  std::vector<std::size_t> cursor(n, 0);
  int pos = 0;
  while (pos >= 0) {
    if (pos == n) {
      if (static_cast<long long>(facets.size()) >= facet_limit) {
        throw ResourceLimit("more than " + std::to_string(facet_limit) + " proper colorings");
      }
      facets.push_back(coloring);
      --pos;
      continue;
    }
    const auto& list = inst.list(pos);
    bool placed = false;
    while (cursor[pos] < list.size()) {
      int c = list[cursor[pos]++];
      bool ok = true;
      for (int y : conflict.neighbors(pos)) {
        if (y < pos && coloring[y] == c) {
          ok = false;
          break;
        }
      }
      if (ok) {
        coloring[pos] = c;
        placed = true;
        break;
      }
    }
    if (placed) {
      ++pos;
      if (pos < n) cursor[pos] = 0;
    } else {
      coloring[pos] = 0;
      --pos;
    }
  }
  if (facets.empty()) throw EmptyComplex("instance has no proper list coloring");
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  std::vector<double> weights(facets.size(), 1.0);
  return WeightedComplex::from_colorings(std::move(labels), facets, std::move(weights), conflict);
}

std::vector<WeightedFace> marginal(const WeightedComplex& X, const Face& tau, int i) {
  const double w_tau = X.weight(tau);
  if (!(w_tau > 0.0)) throw InvalidInput("not a face: {" + X.key(tau) + "}");
  const int k = X.codim(tau);
  if (i < -1 || i > k - 1) throw InvalidInput("marginal level out of range");
  const double norm = binomial(k, i + 1) * w_tau;
  std::vector<WeightedFace> out;
  if (i == -1) {
    out.push_back({Face{}, 1.0});
    return out;
  }
  // Extend tau one element at a time; faces of the link of size i+1.
  std::set<Face> frontier{tau};
  for (int step = 0; step <= i; ++step) {
    std::set<Face> next;
    for (const Face& f : frontier) {
      for (int x : X.support(f)) next.insert(f.with(x));
    }
    frontier = std::move(next);
  }
  for (const Face& f : frontier) {
    Face eta;
    for (int x : f.indices()) {
      if (!tau.contains(x)) eta = eta.with(x);
    }
    out.push_back({eta, X.weight(f) / norm});
  }
  return out;
}

LocalWalk local_walk(const WeightedComplex& X, const Face& tau) {
  const double w_tau = X.weight(tau);
  if (!(w_tau > 0.0)) throw InvalidInput("not a face: {" + X.key(tau) + "}");
  const int k = X.codim(tau);
  if (k < 2) throw InvalidInput("local walks need codimension at least 2");
  const int N = X.ground_size();
  LocalWalk walk;
  walk.face = tau;
  walk.support = X.support(tau);
  walk.transition = Eigen::MatrixXd::Zero(N, N);
  walk.stationary = Eigen::VectorXd::Zero(N);
  for (int x : walk.support) {
    const Face tx = tau.with(x);
    const double w_x = X.weight(tx);
    walk.stationary(x) = w_x / (k * w_tau);
    for (int y : walk.support) {
      if (y == x) continue;
      walk.transition(x, y) = X.weight(tx.with(y)) / ((k - 1) * w_x);
    }
  }
  return walk;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> down_up_walk(const WeightedComplex& X) {
  const auto& facets = X.facets();
  const auto& weights = X.facet_weights();
  const int n = X.element_count();
  const int F = static_cast<int>(facets.size());
  // Facets grouped by the codimension-1 face left after dropping one element.
  std::vector<std::unordered_map<Face, std::vector<int>, FaceHash>> groups(n);
  std::vector<std::vector<int>> idx(F);
  for (int f = 0; f < F; ++f) {
    idx[f] = facets[f].indices();
    for (int e = 0; e < n; ++e) groups[e][facets[f].without(idx[f][e])].push_back(f);
  }
  std::vector<Eigen::Triplet<double>> entries;
  for (int f = 0; f < F; ++f) {
    for (int e = 0; e < n; ++e) {
      const auto& group = groups[e].at(facets[f].without(idx[f][e]));
      double w_rho = 0.0;
      for (int g : group) w_rho += weights[g];
      for (int g : group) entries.emplace_back(f, g, weights[g] / (w_rho * n));
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> P(F, F);
  P.setFromTriplets(entries.begin(), entries.end());
  return P;
}

WeightedComplex link(const WeightedComplex& X, const Face& tau) {
  if (!(X.weight(tau) > 0.0)) throw InvalidInput("not a face: {" + X.key(tau) + "}");
  std::vector<int> open = X.uncolored(tau);
  if (open.empty()) throw InvalidInput("the link of a facet is empty");
  std::vector<int> slot(X.element_count(), -1);
  std::vector<int> labels;
  for (std::size_t i = 0; i < open.size(); ++i) {
    slot[open[i]] = static_cast<int>(i);
    labels.push_back(X.element_labels()[open[i]]);
  }
  std::vector<std::vector<int>> facets;
  std::vector<double> weights;
  for (std::size_t f = 0; f < X.facets().size(); ++f) {
    if (!tau.subset_of(X.facets()[f])) continue;
    std::vector<int> colors(open.size());
    for (int i : X.facets()[f].indices()) {
      const auto& p = X.ground()[i];
      if (slot[p.element] >= 0) colors[slot[p.element]] = p.color;
    }
    facets.push_back(std::move(colors));
    weights.push_back(X.facet_weights()[f]);
  }
  std::vector<Edge> edges;
  for (auto [a, b] : X.interaction().edges()) {
    if (slot[a] >= 0 && slot[b] >= 0) edges.emplace_back(slot[a], slot[b]);
  }
  return WeightedComplex::from_colorings(std::move(labels), facets, std::move(weights),
                                         Graph::from_edges(static_cast<int>(open.size()), edges));
}

WeightedComplex product(std::span<const WeightedComplex> factors) {
  if (factors.empty()) throw InvalidInput("product of zero complexes");
  std::vector<int> labels;
  std::vector<Edge> edges;
  std::set<int> seen;
  double count = 1.0;
  for (const auto& X : factors) {
    const int offset = static_cast<int>(labels.size());
    for (int l : X.element_labels()) {
      if (!seen.insert(l).second) {
        throw InvalidInput("product factors share element label " + std::to_string(l));
      }
      labels.push_back(l);
    }
    for (auto [a, b] : X.interaction().edges()) edges.emplace_back(a + offset, b + offset);
    count *= static_cast<double>(X.facets().size());
  }
  if (count > static_cast<double>(kDefaultFacetLimit)) {
    throw ResourceLimit("product has too many facets");
  }
  std::vector<std::vector<int>> facets{{}};
  std::vector<double> weights{1.0};
  for (const auto& X : factors) {
    std::vector<std::vector<int>> colorings;
    for (const Face& f : X.facets()) {
      std::vector<int> colors;
      for (int i : f.indices()) colors.push_back(X.ground()[i].color);
      colorings.push_back(std::move(colors));
    }
    std::vector<std::vector<int>> next;
    std::vector<double> next_w;
    for (std::size_t a = 0; a < facets.size(); ++a) {
      for (std::size_t b = 0; b < colorings.size(); ++b) {
        auto joined = facets[a];
        joined.insert(joined.end(), colorings[b].begin(), colorings[b].end());
        next.push_back(std::move(joined));
        next_w.push_back(weights[a] * X.facet_weights()[b]);
      }
    }
    facets = std::move(next);
    weights = std::move(next_w);
  }
  const int n = static_cast<int>(labels.size());
  return WeightedComplex::from_colorings(std::move(labels), facets, std::move(weights),
                                         Graph::from_edges(n, edges));
}

Eigen::MatrixXd SupportMatrix::dense(int ground_size) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(ground_size, ground_size);
  for (std::size_t a = 0; a < index.size(); ++a) {
    for (std::size_t b = 0; b < index.size(); ++b) out(index[a], index[b]) = values(a, b);
  }
  return out;
}

Eigen::MatrixXd SupportMatrix::embed(const std::vector<int>& target) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(target.size(), target.size());
  std::vector<int> pos(index.size());
  for (std::size_t a = 0; a < index.size(); ++a) {
    auto it = std::lower_bound(target.begin(), target.end(), index[a]);
    if (it == target.end() || *it != index[a]) {
      throw InvalidFamily("matrix support is not contained in the face support");
    }
    pos[a] = static_cast<int>(it - target.begin());
  }
  for (std::size_t a = 0; a < index.size(); ++a) {
    for (std::size_t b = 0; b < index.size(); ++b) out(pos[a], pos[b]) = values(a, b);
  }
  return out;
}

SupportMatrix SupportMatrix::zero(std::vector<int> index) {
  const auto n = static_cast<Eigen::Index>(index.size());
  return {std::move(index), Eigen::MatrixXd::Zero(n, n)};
}

std::vector<ComponentFaces> component_completions(const WeightedComplex& X, const Face& tau) {
  std::vector<ComponentFaces> out;
  auto comps = X.components(tau);
  if (comps.size() < 2) return out;
  for (auto& comp : comps) {
    if (comp.size() < 2) continue;
    std::vector<bool> inside(X.element_count(), false);
    for (int e : comp) inside[e] = true;
    std::set<Face> faces;
    for (const Face& f : X.facets()) {
      if (!tau.subset_of(f)) continue;
      Face reduced;
      for (int i : f.indices()) {
        if (!inside[X.ground()[i].element]) reduced = reduced.with(i);
      }
      faces.insert(reduced);
    }
    out.push_back({comp, std::vector<Face>(faces.begin(), faces.end())});
  }
  return out;
}

SupportMatrix block_diag_f_times(
    const WeightedComplex& X, const Face& tau,
    const std::function<SupportMatrix(const Face& tau_eta_minus_i)>& block_of, double tol) {
  if (X.components(tau).size() < 2) {
    throw InvalidInput("f_x needs a disconnected residual at {" + X.key(tau) + "}");
  }
  std::vector<int> support = X.support(tau);
  SupportMatrix out = SupportMatrix::zero(support);
  for (const auto& comp : component_completions(X, tau)) {
    SupportMatrix first = block_of(comp.faces.front());
    for (std::size_t j = 1; j < comp.faces.size(); ++j) {
      SupportMatrix other = block_of(comp.faces[j]);
      const bool differs =
          other.index != first.index ||
          (first.values.size() > 0 && (other.values - first.values).cwiseAbs().maxCoeff() > tol);
      if (differs) {
        throw InvalidFamily("component block at {" + X.key(comp.faces[j]) +
                            "} depends on the coloring of other components");
      }
    }
    out.values += first.embed(support);
  }
  return out;
}

}  // namespace hdxcolor
