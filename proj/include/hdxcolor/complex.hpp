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

#ifndef HDXCOLOR_COMPLEX_HPP_
#define HDXCOLOR_COMPLEX_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <bitset>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdxcolor/graphs.hpp"

namespace hdxcolor {

inline constexpr int kMaxGround = 128;

// A set of ground indices, i.e. (element, color) pairs of one complex.
class Face {
 public:
  Face() = default;

  bool contains(int index) const { return bits_.test(index); }
  int size() const { return static_cast<int>(bits_.count()); }
  bool empty() const { return bits_.none(); }
  Face with(int index) const {
    Face f = *this;
    f.bits_.set(index);
    return f;
  }
  Face without(int index) const {
    Face f = *this;
    f.bits_.reset(index);
    return f;
  }
  bool subset_of(const Face& other) const { return (bits_ & ~other.bits_).none(); }
  Face operator|(const Face& other) const {
    Face f;
    f.bits_ = bits_ | other.bits_;
    return f;
  }
  Face operator&(const Face& other) const {
    Face f;
    f.bits_ = bits_ & other.bits_;
    return f;
  }
  std::vector<int> indices() const;

  friend bool operator==(const Face&, const Face&) = default;
  friend bool operator<(const Face& a, const Face& b);

  std::size_t hash() const;

 private:
  std::bitset<kMaxGround> bits_;
};

struct FaceHash {
  std::size_t operator()(const Face& f) const { return f.hash(); }
};

struct GroundPair {
  int element;  // dense slot 0..n-1 inside its complex
  int color;
  friend bool operator==(const GroundPair&, const GroundPair&) = default;
};

// A pure weighted complex whose ground set is partitioned by elements and
// whose facets pick exactly one ground pair per element. Coloring complexes,
// their links and their products all have this shape.
class WeightedComplex {
 public:
  // `facets[f][e]` is the color of element e in facet f. Weights need not be
  // normalized. `interaction` is a graph on element slots; components of its
  // restriction to uncolored elements give the product structure of links.
  static WeightedComplex from_colorings(std::vector<int> element_labels,
                                        const std::vector<std::vector<int>>& facets,
                                        std::vector<double> weights, Graph interaction);

  int dimension() const { return element_count() - 1; }
  int element_count() const { return static_cast<int>(element_labels_.size()); }
  int ground_size() const { return static_cast<int>(ground_.size()); }
  const std::vector<GroundPair>& ground() const { return ground_; }
  // External id of each element slot (instance element id, or relabeled).
  const std::vector<int>& element_labels() const { return element_labels_; }
  const Graph& interaction() const { return interaction_; }
  const std::vector<Face>& facets() const { return facets_; }
  const std::vector<double>& facet_weights() const { return weights_; }
  // Index of (element slot, color), or -1.
  int ground_index(int element, int color) const;

  // Total weight of facets containing `face`; zero if `face` is not a face.
  double weight(const Face& face) const;
  bool is_face(const Face& face) const { return weight(face) > 0.0; }
  int codim(const Face& face) const { return element_count() - face.size(); }
  // All faces of the given codimension, in increasing order.
  std::vector<Face> faces_of_codim(int k) const;
  // Ground indices x not in `face` with face + x a face.
  std::vector<int> support(const Face& face) const;
  // Element slots not colored by `face`.
  std::vector<int> uncolored(const Face& face) const;
  // Components of the interaction graph restricted to uncolored elements,
  // as lists of element slots ordered by smallest member.
  std::vector<std::vector<int>> components(const Face& face) const;

  // Canonical "label:color,..." key, sorted by element label.
  std::string key(const Face& face) const;
  Face parse_key(const std::string& key) const;
  Face face_from(std::span<const GroundPair> pairs) const;

  WeightedComplex relabel_elements(int offset) const;

  // Number of distinct faces; builds the face table.
  std::size_t face_count() const;

 private:
  void build_face_table() const;

  std::vector<int> element_labels_;
  std::vector<GroundPair> ground_;
  std::vector<int> ground_offset_;  // first ground index of each element
  Graph interaction_;
  std::vector<Face> facets_;
  std::vector<double> weights_;

  struct FaceTable {
    std::once_flag once;
    std::unordered_map<Face, double, FaceHash> weights;
  };
  std::shared_ptr<FaceTable> table_ = std::make_shared<FaceTable>();
};

inline constexpr long long kDefaultFacetLimit = 5'000'000;

// Uniform distribution over proper colorings; element slot i is instance
// element i.
WeightedComplex build_complex(const ListColoringInstance& inst,
                              long long facet_limit = kDefaultFacetLimit);

struct WeightedFace {
  Face face;
  double weight;
};

// pi_{tau,i}: faces eta of size i+1 disjoint from tau, with their marginal.
std::vector<WeightedFace> marginal(const WeightedComplex& X, const Face& tau, int i);

struct LocalWalk {
  Face face;
  std::vector<int> support;
  Eigen::MatrixXd transition;  // ground_size square, zero off the support
  Eigen::VectorXd stationary;  // ground_size, zero off the support
};

LocalWalk local_walk(const WeightedComplex& X, const Face& tau);

// Down-up walk on facets (rows indexed like X.facets()).
Eigen::SparseMatrix<double, Eigen::RowMajor> down_up_walk(const WeightedComplex& X);

WeightedComplex link(const WeightedComplex& X, const Face& tau);

// Factors must use disjoint element labels.
WeightedComplex product(std::span<const WeightedComplex> factors);

// A symmetric matrix on X(0) stored as a dense block on sorted `index`.
struct SupportMatrix {
  std::vector<int> index;
  Eigen::MatrixXd values;

  Eigen::MatrixXd dense(int ground_size) const;
  // Entries on `target` (a superset of index), zero-padded.
  Eigen::MatrixXd embed(const std::vector<int>& target) const;
  static SupportMatrix zero(std::vector<int> index);
};

// f_x: for each component U_i of the residual at tau with |U_i| > 1,
// `block_of(component, eta_minus_i)` gives the component's matrix at the face
// tau + eta_{-i}. Every choice of eta is checked to give the same block.
// Returns the block-diagonal sum on the support of tau; throws InvalidFamily
// if some block depends on the coloring of the other components.
SupportMatrix block_diag_f_times(
    const WeightedComplex& X, const Face& tau,
    const std::function<SupportMatrix(const Face& tau_eta_minus_i)>& block_of,
    double tol = 1e-10);

// Faces tau + eta_{-i} for every completion eta of tau, one list per
// component with more than one element.
struct ComponentFaces {
  std::vector<int> elements;
  std::vector<Face> faces;
};
std::vector<ComponentFaces> component_completions(const WeightedComplex& X, const Face& tau);

}  // namespace hdxcolor

#endif  // HDXCOLOR_COMPLEX_HPP_
