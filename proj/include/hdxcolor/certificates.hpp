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

#ifndef HDXCOLOR_CERTIFICATES_HPP_
#define HDXCOLOR_CERTIFICATES_HPP_

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdxcolor/complex.hpp"
#include "hdxcolor/graphs.hpp"
#include "hdxcolor/trickledown.hpp"

namespace hdxcolor {

enum class Regime { kVertex2Delta, kVertexTree, kEdge };

const char* to_string(Regime r);
Regime parse_regime(const std::string& text);

struct CertificateParams {
  Regime regime = Regime::kVertex2Delta;
  double epsilon = 1.0;
  std::optional<double> beta;   // regime default when unset
  std::optional<int> Delta;     // max degree of the base graph when unset
  int root = 0;                 // tree regime
};

// Parameters with defaults filled in from the instance. Throws InvalidInput
// for a non-positive epsilon or a regime that does not match the kind.
struct ResolvedParams {
  Regime regime;
  double epsilon;
  double beta;
  int Delta;
  int root;
};
ResolvedParams resolve(const ListColoringInstance& inst, const CertificateParams& params);

// Recorded, never enforced.
struct RegimeStatus {
  bool beta_extra = false;
  bool asymptotic_precondition = false;
  std::string description;
};
RegimeStatus regime_status(const ListColoringInstance& inst, const ResolvedParams& p);

using FaceMatrices = std::unordered_map<Face, SupportMatrix, FaceHash>;

struct SplitFamily {
  FaceMatrices F;      // diagonal
  FaceMatrices A;      // hollow
  FaceMatrices A_bar;  // edge regime, connected faces of codim >= 3
  FaceMatrices S;      // edge regime, connected faces of codim >= 3
};

// Per-face coloring geometry read off the complex of a coloring instance.
class ColoringView {
 public:
  ColoringView(const ListColoringInstance& inst, const WeightedComplex& X);

  const ListColoringInstance& instance() const { return inst_; }
  const WeightedComplex& complex() const { return X_; }
  // Uncolored elements, and degree inside the residual conflict graph.
  std::vector<int> open(const Face& tau) const;
  int residual_degree(const Face& tau, int element) const;
  // Uncolored edges at base-graph vertex v (edge kind).
  int vertex_residual_degree(const Face& tau, int v) const;
  // l_tau(x): colors of x in the support of tau.
  int list_size(const Face& tau, int element) const;
  bool connected(const Face& tau) const { return X_.components(tau).size() <= 1; }
  // p(y | face) for a ground index y.
  double conditional(const Face& face, int y) const;

 private:
  const ListColoringInstance& inst_;
  const WeightedComplex& X_;
};

// Pi^{1/2} M~ Pi^{1/2} for a codimension-2 face with a connected residual.
SupportMatrix base_case_matrix(const ColoringView& view, const Face& tau);
// M~ itself, on the support of tau.
SupportMatrix base_case_tilde(const ColoringView& view, const Face& tau);

// f-functions. H(i) = sum_{j=1}^{i} 1/j.
double harmonic(int i);
double f1_vertex_2delta(const ResolvedParams& p, int i);
double f2_vertex_2delta(const ResolvedParams& p, int i);  // throws RegimeViolation
double f1_tree(const ResolvedParams& p, int i);
double f2_tree(const ResolvedParams& p, int i);
double f3_tree(const ResolvedParams& p, int i, int j);
double f1_edge(const ResolvedParams& p, int i);
double f2_edge(const ResolvedParams& p, int i);
// Values of f2(1) used by the scalar recursion replays.
double sentinel_f2_vertex_2delta(const ResolvedParams& p);
double sentinel_f2_tree(const ResolvedParams& p);
double sentinel_f2_edge(const ResolvedParams& p);

// Scalar recursion slacks along the degree sequence, with the sentinel
// f2(1): vertex (i-1) f2(i) - i f2(i-1) - f2(i)^2; tree and edge subtract
// their squared and gamma terms as in the appendix proofs.
double replay_vertex_2delta(const ResolvedParams& p, int i);
double replay_vertex_2delta_with(const ResolvedParams& p, int i, double f2_at_1);
double replay_tree_root(const ResolvedParams& p, int i);
double replay_edge(const ResolvedParams& p, int i);

FaceMatrices build_F_vertex_2delta(const ColoringView& view, const ResolvedParams& p);
FaceMatrices build_F_tree(const ColoringView& view, const ResolvedParams& p);
FaceMatrices build_F_edge(const ColoringView& view, const ResolvedParams& p);
// Hollow family of the tree regime; throws InvalidInput for non-trees.
FaceMatrices build_A_tree(const ColoringView& view);
// The same recursion on any vertex instance.
FaceMatrices build_A_vertex(const ColoringView& view);
// Returns A, A_bar and S.
SplitFamily build_A_edge(const ColoringView& view, const ResolvedParams& p);

double gamma_tree(const ColoringView& view, const Face& tau, int ground_index,
                  const ResolvedParams& p);
double gamma_edge(const ColoringView& view, const Face& tau, int ground_index,
                  const ResolvedParams& p);

// M_tau = (Pi F + Pi^{1/2} A Pi^{1/2}) / (k - 1); A may be empty.
MatrixFamily assemble(const WeightedComplex& X, const FaceMatrices& F, const FaceMatrices* A,
                      Variant variant = Variant::kFull);

struct ConditionVerdict {
  std::string key;
  int codim = 0;
  bool scalar_ok = false;
  bool threshold_ok = false;
  double worst_slack = 0.0;  // min over entries of RHS - LHS
  bool ok() const { return scalar_ok && threshold_ok; }
  friend bool operator==(const ConditionVerdict&, const ConditionVerdict&) = default;
};

// Only connected faces of codimension >= 3 are checked.
std::vector<ConditionVerdict> check_condition_F_vertex_2delta(const ColoringView& view,
                                                              const FaceMatrices& F,
                                                              const ResolvedParams& p);
std::vector<ConditionVerdict> check_condition_F_tree(const ColoringView& view,
                                                     const FaceMatrices& F,
                                                     const ResolvedParams& p);
std::vector<ConditionVerdict> check_condition_F_edge(const ColoringView& view,
                                                     const FaceMatrices& F,
                                                     const ResolvedParams& p);

struct BoundCheck {
  std::string key;
  bool ok = false;
  double worst = 0.0;  // most negative slack
  friend bool operator==(const BoundCheck&, const BoundCheck&) = default;
};

// Every nonzero-pattern entry of A in [-1/beta, 0].
std::vector<BoundCheck> check_A_bounds_tree(const ColoringView& view, const FaceMatrices& A,
                                            double beta, double tol = 1e-10);
// Entries of A_bar between the averaged child minima and maxima.
std::vector<BoundCheck> check_sandwich_edge(const ColoringView& view, const SplitFamily& family,
                                            double tol = 1e-10);
// Case (i)/(ii) entry bounds of the edge family.
std::vector<BoundCheck> check_A_bounds_edge(const ColoringView& view, const SplitFamily& family,
                                            const ResolvedParams& p, double tol = 1e-10);
// Per connected face of codimension >= 3: |A| <= 1/(2 eps Delta),
// (1+eps) A_bar^2 <= S and diag(gamma) >= diag(S) + (3+eps+2/eps) offdiag(S)^2/(k-2)^2.
std::vector<BoundCheck> check_edge_ingredients(const ColoringView& view, const SplitFamily& family,
                                               const ResolvedParams& p, double tol = 1e-9);
// Per connected face of codimension >= 3: A entries in [-1/beta, 0] and
// 2 A^2 <= diag(gamma).
std::vector<BoundCheck> check_tree_ingredients(const ColoringView& view, const FaceMatrices& A,
                                               const ResolvedParams& p, double tol = 1e-9);

// A^2 <= 2 sum_v (A^v)^2 for the weighted adjacency matrix of a line graph.
// `weights` is indexed by line-graph edge id.
bool line_graph_square_check(const Graph& g, const std::vector<double>& weights,
                             double tol = 1e-9);

struct PairingRecord {
  std::string key;
  int codim = 0;
  double lambda2 = 0.0;
  double bound = 0.0;  // rho(F + A) / (k - 1)
  bool conditions_hold = false;  // this face and every face above it
  bool sound = true;

  friend bool operator==(const PairingRecord&, const PairingRecord&) = default;
};

struct RegimeRun {
  ResolvedParams params;
  RegimeStatus status;
  SplitFamily family;
  MatrixFamily M;
  CertificateReport report;
  std::vector<ConditionVerdict> conditions;
  std::vector<BoundCheck> a_bounds;      // tree only
  std::vector<BoundCheck> ingredients;   // tree and edge
  std::vector<BoundCheck> sandwich;      // edge only
  std::vector<BoundCheck> entry_bounds;  // edge only, reported
  // gamma_tau per connected face of codimension >= 3 (tree and edge).
  std::map<std::string, std::map<std::string, double>> gamma;
  std::vector<PairingRecord> pairing;
  int pairing_violations = 0;
  bool sound() const { return pairing_violations == 0 && report.soundness_ok(); }
};

// Builds the regime's family, runs certify and the scalar checkers, and the
// soundness pairing.
RegimeRun run_regime(const ListColoringInstance& inst, const WeightedComplex& X,
                     const CertificateParams& params);

}  // namespace hdxcolor

#endif  // HDXCOLOR_CERTIFICATES_HPP_
