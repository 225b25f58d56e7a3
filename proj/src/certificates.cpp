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

#include "hdxcolor/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

#include "hdxcolor/errors.hpp"
#include "hdxcolor/parallel.hpp"
#include "hdxcolor/spectral.hpp"

namespace hdxcolor {
namespace {

constexpr double kTieTol = 1e-12;

int position(const std::vector<int>& index, int a) {
  auto it = std::lower_bound(index.begin(), index.end(), a);
  return it != index.end() && *it == a ? static_cast<int>(it - index.begin()) : -1;
}

double entry(const SupportMatrix& m, int a, int b) {
  const int i = position(m.index, a);
  const int j = position(m.index, b);
  return i < 0 || j < 0 ? 0.0 : m.values(i, j);
}

// pi_tau on `index`.
Eigen::VectorXd stationary_on(const WeightedComplex& X, const Face& tau,
                              const std::vector<int>& index) {
  const double norm = X.codim(tau) * X.weight(tau);
  Eigen::VectorXd pi(static_cast<Eigen::Index>(index.size()));
  for (std::size_t a = 0; a < index.size(); ++a) pi(a) = X.weight(tau.with(index[a])) / norm;
  return pi;
}

Eigen::MatrixXd offdiag(const Eigen::MatrixXd& M) {
  Eigen::MatrixXd out = M;
  out.diagonal().setZero();
  return out;
}

std::vector<int> tree_parents(const Graph& g, int root) {
  std::vector<int> parent(g.vertex_count(), -2);
  std::queue<int> queue;
  parent[root] = -1;
  queue.push(root);
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int u : g.neighbors(v)) {
      if (parent[u] != -2) continue;
      parent[u] = v;
      queue.push(u);
    }
  }
  return parent;
}

double regime_default_beta(Regime r, double eps, int Delta) {
  switch (r) {
    case Regime::kVertex2Delta:
      return (1 + eps) * Delta;
    case Regime::kVertexTree:
      return eps * Delta;
    case Regime::kEdge:
      return (4.0 / 3.0 + 4 * eps) * Delta;
  }
  return 0.0;
}

// All faces of codimension >= 2, by increasing codimension.
std::vector<std::vector<Face>> levels(const WeightedComplex& X) {
  std::vector<std::vector<Face>> out;
  for (int k = 2; k <= X.element_count(); ++k) out.push_back(X.faces_of_codim(k));
  return out;
}

// Builds a per-face family level by level. `connected_value` fills connected
// faces; disconnected faces are assembled with f_x.
FaceMatrices build_levels(const ColoringView& view,
                          const std::function<SupportMatrix(const Face&)>& connected_value) {
  const WeightedComplex& X = view.complex();
  FaceMatrices out;
  for (const auto& level : levels(X)) {
    std::vector<SupportMatrix> values(level.size());
    parallel_for(level.size(), [&](std::size_t i) {
      const Face& tau = level[i];
      if (view.connected(tau)) {
        values[i] = connected_value(tau);
      } else {
        values[i] = block_diag_f_times(X, tau, [&](const Face& f) { return out.at(f); });
      }
    });
    for (std::size_t i = 0; i < level.size(); ++i) out.emplace(level[i], std::move(values[i]));
  }
  return out;
}

SupportMatrix diagonal_family_entry(const ColoringView& view, const Face& tau,
                                    const std::function<double(int element)>& value) {
  SupportMatrix m = SupportMatrix::zero(view.complex().support(tau));
  for (std::size_t a = 0; a < m.index.size(); ++a) {
    m.values(a, a) = value(view.complex().ground()[m.index[a]].element);
  }
  return m;
}

int only_neighbor(const ColoringView& view, const Face& tau, int x) {
  const auto open = view.open(tau);
  for (int y : view.instance().conflict_graph().neighbors(x)) {
    if (std::binary_search(open.begin(), open.end(), y)) return y;
  }
  throw InvalidInput("element has no uncolored neighbor");
}

// Hollow codimension-2 block: -1/sqrt((l_u - 1)(l_v - 1)) on shared colors.
SupportMatrix base_hollow(const ColoringView& view, const Face& tau) {
  const WeightedComplex& X = view.complex();
  SupportMatrix m = SupportMatrix::zero(X.support(tau));
  for (std::size_t a = 0; a < m.index.size(); ++a) {
    for (std::size_t b = 0; b < m.index.size(); ++b) {
      const GroundPair& x = X.ground()[m.index[a]];
      const GroundPair& y = X.ground()[m.index[b]];
      if (x.element == y.element || x.color != y.color) continue;
      const double prod = static_cast<double>(view.list_size(tau, x.element) - 1) *
                          (view.list_size(tau, y.element) - 1);
      if (prod > 0) m.values(a, b) = -1.0 / std::sqrt(prod);
    }
  }
  return m;
}

void require_base_face(const ColoringView& view, const Face& tau) {
  if (view.complex().codim(tau) != 2) throw InvalidInput("base case needs codimension 2");
  if (!view.connected(tau)) {
    throw InvalidInput("base case needs a connected residual at {" + view.complex().key(tau) + "}");
  }
}

// (k-1)/(k-2) Pi^{-1/2} E_x[Pi_x^{1/2} A_x Pi_x^{1/2}] Pi^{-1/2}.
SupportMatrix conjugated_expectation(const WeightedComplex& X, const Face& tau,
                                     const FaceMatrices& A) {
  const int k = X.codim(tau);
  SupportMatrix out = SupportMatrix::zero(X.support(tau));
  const Eigen::VectorXd pi = stationary_on(X, tau, out.index);
  for (std::size_t a = 0; a < out.index.size(); ++a) {
    const Face child = tau.with(out.index[a]);
    const SupportMatrix& Ac = A.at(child);
    const Eigen::VectorXd root = stationary_on(X, child, Ac.index).cwiseSqrt();
    SupportMatrix conj{Ac.index, root.asDiagonal() * Ac.values * root.asDiagonal()};
    out.values += pi(a) * conj.embed(out.index);
  }
  const Eigen::VectorXd inv_root = pi.cwiseSqrt().cwiseInverse();
  out.values = (static_cast<double>(k - 1) / (k - 2)) * inv_root.asDiagonal() * out.values *
               inv_root.asDiagonal();
  out.values = 0.5 * (out.values + out.values.transpose());
  return out;
}

FaceMatrices build_A_generic(const ColoringView& view) {
  const WeightedComplex& X = view.complex();
  FaceMatrices out;
  for (const auto& level : levels(X)) {
    std::vector<SupportMatrix> values(level.size());
    parallel_for(level.size(), [&](std::size_t i) {
      const Face& tau = level[i];
      if (!view.connected(tau)) {
        values[i] = block_diag_f_times(X, tau, [&](const Face& f) { return out.at(f); });
      } else if (X.codim(tau) == 2) {
        values[i] = base_hollow(view, tau);
      } else {
        values[i] = conjugated_expectation(X, tau, out);
      }
    });
    for (std::size_t i = 0; i < level.size(); ++i) out.emplace(level[i], std::move(values[i]));
  }
  return out;
}

// Base-graph vertices incident to the element of each ground index (edge kind).
std::pair<int, int> endpoints(const ColoringView& view, int ground_index) {
  const int e = view.complex().ground()[ground_index].element;
  return view.instance().graph().edges()[e];
}

bool touches(const std::pair<int, int>& e, int v) { return e.first == v || e.second == v; }

// A^v: entries of A whose two edges both meet v.
Eigen::MatrixXd restrict_to_vertex(const ColoringView& view, const SupportMatrix& A, int v) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(A.values.rows(), A.values.cols());
  for (std::size_t a = 0; a < A.index.size(); ++a) {
    if (!touches(endpoints(view, A.index[a]), v)) continue;
    for (std::size_t b = 0; b < A.index.size(); ++b) {
      if (a != b && touches(endpoints(view, A.index[b]), v)) out(a, b) = A.values(a, b);
    }
  }
  return out;
}

double slack_tol(double lhs, double rhs) { return 1e-12 * std::max(1.0, std::abs(lhs) + std::abs(rhs)); }

using GammaFn = std::function<double(const Face& tau, int ground_index)>;

std::vector<ConditionVerdict> check_condition(const ColoringView& view, const FaceMatrices& F,
                                              double square_coeff, const GammaFn& gamma,
                                              const std::function<double(int k)>& threshold) {
  const WeightedComplex& X = view.complex();
  std::vector<Face> faces;
  for (int k = 3; k <= X.element_count(); ++k) {
    for (const Face& tau : X.faces_of_codim(k)) {
      if (view.connected(tau)) faces.push_back(tau);
    }
  }
  std::vector<ConditionVerdict> out(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) {
    const Face& tau = faces[i];
    ConditionVerdict& v = out[i];
    v.key = X.key(tau);
    v.codim = X.codim(tau);
    v.scalar_ok = true;
    v.threshold_ok = true;
    v.worst_slack = std::numeric_limits<double>::infinity();
    const SupportMatrix& Ft = F.at(tau);
    const double bound = threshold(v.codim);
    for (std::size_t a = 0; a < Ft.index.size(); ++a) {
      const int y = Ft.index[a];
      const double f = Ft.values(a, a);
      const Face with_y = tau.with(y);
      double lhs = 0.0;
      for (int u : X.support(with_y)) {
        lhs += view.conditional(with_y, u) * entry(F.at(tau.with(u)), y, y);
      }
      const double rhs = (v.codim - 2) * f - square_coeff * f * f - gamma(tau, y);
      v.worst_slack = std::min(v.worst_slack, rhs - lhs);
      if (rhs - lhs < -slack_tol(lhs, rhs)) v.scalar_ok = false;
      if (f > bound + kTieTol) v.threshold_ok = false;
    }
  });
  return out;
}

std::vector<Face> connected_faces_from(const ColoringView& view, int min_codim) {
  std::vector<Face> out;
  const WeightedComplex& X = view.complex();
  for (int k = min_codim; k <= X.element_count(); ++k) {
    for (const Face& tau : X.faces_of_codim(k)) {
      if (view.connected(tau)) out.push_back(tau);
    }
  }
  return out;
}

double spectral_radius_sym(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  const Eigen::VectorXd ev = symmetric_eigenvalues(M);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::kVertex2Delta:
      return "vertex_2delta";
    case Regime::kVertexTree:
      return "vertex_tree";
    case Regime::kEdge:
      return "edge";
  }
  return "?";
}

Regime parse_regime(const std::string& text) {
  if (text == "vertex_2delta") return Regime::kVertex2Delta;
  if (text == "vertex_tree") return Regime::kVertexTree;
  if (text == "edge") return Regime::kEdge;
  throw InvalidInput("unknown regime '" + text + "' (expected vertex_2delta, vertex_tree or edge)");
}

ResolvedParams resolve(const ListColoringInstance& inst, const CertificateParams& params) {
  if (!(params.epsilon > 0) || !std::isfinite(params.epsilon)) {
    throw InvalidInput("epsilon must be positive");
  }
  const bool edge_regime = params.regime == Regime::kEdge;
  if (edge_regime != (inst.kind() == ElementKind::kEdge)) {
    throw InvalidInput(std::string("regime ") + to_string(params.regime) +
                       " does not apply to " + to_string(inst.kind()) + " instances");
  }
  ResolvedParams p{params.regime, params.epsilon, 0.0, params.Delta.value_or(inst.max_degree()),
                   params.root};
  if (p.Delta < 1) throw InvalidInput("Delta must be at least 1");
  if (p.regime == Regime::kVertexTree) {
    if (!inst.graph().is_tree()) throw InvalidInput("vertex_tree regime needs a tree");
    if (p.root < 0 || p.root >= inst.graph().vertex_count()) {
      throw InvalidInput("root " + std::to_string(p.root) + " is not a vertex");
    }
  }
  p.beta = params.beta.value_or(regime_default_beta(p.regime, p.epsilon, p.Delta));
  if (!(p.beta > 0)) throw InvalidInput("beta must be positive");
  return p;
}

RegimeStatus regime_status(const ListColoringInstance& inst, const ResolvedParams& p) {
  RegimeStatus s;
  s.beta_extra = is_beta_extra(inst, p.beta);
  const double D = p.Delta;
  const double eps = p.epsilon;
  const double lnD = std::log(D);
  switch (p.regime) {
    case Regime::kVertex2Delta:
      s.asymptotic_precondition = (lnD + 2) / D <= eps * eps / 40 && eps <= 1;
      s.description = "(ln Delta + 2)/Delta <= eps^2/40, eps <= 1";
      break;
    case Regime::kVertexTree:
      s.asymptotic_precondition = lnD * lnD / D <= eps * eps / 100;
      s.description = "ln^2 Delta/Delta <= eps^2/100";
      break;
    case Regime::kEdge:
      s.asymptotic_precondition =
          lnD * lnD / D <= eps * eps * eps / 15 && eps <= 0.1 && D >= 2 / (eps * eps);
      s.description = "ln^2 Delta/Delta <= eps^3/15, eps <= 0.1, Delta >= 2/eps^2";
      break;
  }
  return s;
}

ColoringView::ColoringView(const ListColoringInstance& inst, const WeightedComplex& X)
    : inst_(inst), X_(X) {
  if (X.element_count() != inst.element_count()) {
    throw InvalidInput("complex does not belong to the instance");
  }
}

std::vector<int> ColoringView::open(const Face& tau) const { return X_.uncolored(tau); }

int ColoringView::residual_degree(const Face& tau, int element) const {
  const auto un = open(tau);
  int d = 0;
  for (int y : inst_.conflict_graph().neighbors(element)) {
    if (std::binary_search(un.begin(), un.end(), y)) ++d;
  }
  return d;
}

int ColoringView::vertex_residual_degree(const Face& tau, int v) const {
  if (inst_.kind() != ElementKind::kEdge) throw InvalidInput("vertex degrees need edge elements");
  const auto un = open(tau);
  int d = 0;
  for (int w : inst_.graph().neighbors(v)) {
    if (std::binary_search(un.begin(), un.end(), inst_.graph().edge_id(v, w))) ++d;
  }
  return d;
}

int ColoringView::list_size(const Face& tau, int element) const {
  int l = 0;
  for (int y : X_.support(tau)) l += X_.ground()[y].element == element;
  return l;
}

double ColoringView::conditional(const Face& face, int y) const {
  return X_.weight(face.with(y)) / X_.weight(face);
}

SupportMatrix base_case_tilde(const ColoringView& view, const Face& tau) {
  require_base_face(view, tau);
  SupportMatrix m = base_hollow(view, tau);
  const WeightedComplex& X = view.complex();
  for (std::size_t a = 0; a < m.index.size(); ++a) {
    const GroundPair& x = X.ground()[m.index[a]];
    for (std::size_t b = 0; b < m.index.size(); ++b) {
      if (a == b || m.values(a, b) == 0.0) continue;
      const GroundPair& y = X.ground()[m.index[b]];
      m.values(a, a) = 1.0 / (static_cast<double>(view.list_size(tau, x.element) - 1) *
                              (view.list_size(tau, y.element) - 1));
    }
  }
  return m;
}

SupportMatrix base_case_matrix(const ColoringView& view, const Face& tau) {
  SupportMatrix m = base_case_tilde(view, tau);
  const Eigen::VectorXd root = stationary_on(view.complex(), tau, m.index).cwiseSqrt();
  m.values = root.asDiagonal() * m.values * root.asDiagonal();
  return m;
}

double harmonic(int i) {
  double h = 0.0;
  for (int j = 1; j <= i; ++j) h += 1.0 / j;
  return h;
}

double f1_vertex_2delta(const ResolvedParams& p, int i) {
  const double b = (1 + p.epsilon) * p.Delta;
  return 1.0 / b + (1 + 2 * harmonic(i - 1)) / (b * b);
}

double f2_vertex_2delta(const ResolvedParams& p, int i) {
  const double denom =
      (1 + p.epsilon / 2) * p.Delta - (i - 1) - (4 / p.epsilon) * harmonic(i - 1);
  if (!(denom > 0)) {
    throw RegimeViolation("f2(" + std::to_string(i) + ") has non-positive denominator " +
                          std::to_string(denom) + " at epsilon=" + std::to_string(p.epsilon) +
                          ", Delta=" + std::to_string(p.Delta));
  }
  return i / denom;
}

double f1_tree(const ResolvedParams& p, int i) {
  const double s = p.epsilon * p.epsilon * p.Delta * p.Delta;
  return (5 * harmonic(i - 1) + 1) / s;
}

double f2_tree(const ResolvedParams& p, int i) {
  const double s = p.epsilon * p.epsilon * p.Delta * p.Delta;
  return 5 * (std::log(p.Delta) + 1 + i * harmonic(i - 1)) / s;
}

double f3_tree(const ResolvedParams& p, int i, int j) {
  const double s = p.epsilon * p.epsilon * p.Delta * p.Delta;
  return 5 * (std::log(p.Delta) + 1 + j + i * harmonic(i - 1)) / s;
}

double f1_edge(const ResolvedParams& p, int i) {
  const double e = p.epsilon;
  const double D2 = static_cast<double>(p.Delta) * p.Delta;
  const double b = 4.0 / 3.0 + 4 * e;
  return 1.0 / (b * b * D2) + (4 * std::pow(e, -5) + 0.6 * std::pow(e, -2)) * harmonic(i - 1) / D2;
}

double f2_edge(const ResolvedParams& p, int i) {
  const double e = p.epsilon;
  const double D2 = static_cast<double>(p.Delta) * p.Delta;
  return (5 * std::pow(e, -5) * std::log(p.Delta) +
          (4 * std::pow(e, -5) + std::pow(e, -2) * i) * harmonic(i - 1)) /
         D2;
}

double sentinel_f2_vertex_2delta(const ResolvedParams& p) { return 1.0 / (1 + p.epsilon / 2); }

double sentinel_f2_tree(const ResolvedParams& p) {
  return 5 * (std::log(p.Delta) + 1) / (p.epsilon * p.epsilon * p.Delta * p.Delta);
}

double sentinel_f2_edge(const ResolvedParams& p) {
  return 5 * std::pow(p.epsilon, -5) * std::log(p.Delta) / (static_cast<double>(p.Delta) * p.Delta);
}

double replay_vertex_2delta_with(const ResolvedParams& p, int i, double f2_at_1) {
  if (i < 2) throw InvalidInput("recursion replay starts at i = 2");
  const double fi = f2_vertex_2delta(p, i);
  const double prev = i == 2 ? f2_at_1 : f2_vertex_2delta(p, i - 1);
  return (i - 1) * fi - i * prev - fi * fi;
}

double replay_vertex_2delta(const ResolvedParams& p, int i) {
  return replay_vertex_2delta_with(p, i, sentinel_f2_vertex_2delta(p));
}

double replay_tree_root(const ResolvedParams& p, int i) {
  if (i < 2) throw InvalidInput("recursion replay starts at i = 2");
  const double fi = f2_tree(p, i);
  const double prev = i == 2 ? sentinel_f2_tree(p) : f2_tree(p, i - 1);
  return (i - 1) * fi - i * prev - 2 * fi * fi - 4.0 * i / (p.beta * p.beta);
}

double replay_edge(const ResolvedParams& p, int i) {
  if (i < 2) throw InvalidInput("recursion replay starts at i = 2");
  const double e = p.epsilon;
  const double D2 = static_cast<double>(p.Delta) * p.Delta;
  const double fi = f2_edge(p, i);
  const double prev = i == 2 ? sentinel_f2_edge(p) : f2_edge(p, i - 1);
  const double gamma = (1 + e) * i / (2 * e * e * D2) +
                       (1 + e) * (1 + e) * (2 + 3 * e + e * e) / (std::pow(e, 5) * D2);
  return (i - 1) * fi - i * prev - (1 + 2 / e) * fi * fi - gamma;
}

FaceMatrices build_F_vertex_2delta(const ColoringView& view, const ResolvedParams& p) {
  return build_levels(view, [&](const Face& tau) {
    return diagonal_family_entry(view, tau, [&](int v) {
      const int d = view.residual_degree(tau, v);
      if (d == 0) return 0.0;
      if (d == 1) return f1_vertex_2delta(p, view.residual_degree(tau, only_neighbor(view, tau, v)));
      return f2_vertex_2delta(p, d);
    });
  });
}

FaceMatrices build_F_tree(const ColoringView& view, const ResolvedParams& p) {
  const std::vector<int> parent = tree_parents(view.instance().graph(), p.root);
  return build_levels(view, [&](const Face& tau) {
    const auto un = view.open(tau);
    return diagonal_family_entry(view, tau, [&](int v) {
      const int d = view.residual_degree(tau, v);
      if (d == 0) return 0.0;
      const int a = parent[v];
      if (a >= 0 && std::binary_search(un.begin(), un.end(), a)) {
        return f3_tree(p, d, view.residual_degree(tau, a));
      }
      if (d == 1) return f1_tree(p, view.residual_degree(tau, only_neighbor(view, tau, v)));
      return f2_tree(p, d);
    });
  });
}

FaceMatrices build_F_edge(const ColoringView& view, const ResolvedParams& p) {
  return build_levels(view, [&](const Face& tau) {
    return diagonal_family_entry(view, tau, [&](int e) {
      const int d = view.residual_degree(tau, e);
      if (d == 0) return 0.0;
      if (d == 1) return f1_edge(p, view.residual_degree(tau, only_neighbor(view, tau, e)));
      return f2_edge(p, d);
    });
  });
}

FaceMatrices build_A_vertex(const ColoringView& view) {
  if (view.instance().kind() != ElementKind::kVertex) {
    throw InvalidInput("vertex A family needs a vertex instance");
  }
  return build_A_generic(view);
}

FaceMatrices build_A_tree(const ColoringView& view) {
  if (!view.instance().graph().is_tree()) throw InvalidInput("tree A family needs a tree");
  return build_A_vertex(view);
}

SplitFamily build_A_edge(const ColoringView& view, const ResolvedParams& p) {
  if (view.instance().kind() != ElementKind::kEdge) {
    throw InvalidInput("edge A family needs an edge instance");
  }
  const WeightedComplex& X = view.complex();
  const int vertices = view.instance().graph().vertex_count();
  const double eps = p.epsilon;
  SplitFamily out;
  for (const auto& level : levels(X)) {
    struct Entry {
      SupportMatrix A, A_bar, S;
      bool recursive = false;
    };
    std::vector<Entry> values(level.size());
    parallel_for(level.size(), [&](std::size_t i) {
      const Face& tau = level[i];
      Entry& v = values[i];
      if (!view.connected(tau)) {
        v.A = block_diag_f_times(X, tau, [&](const Face& f) { return out.A.at(f); });
        return;
      }
      const int k = X.codim(tau);
      if (k == 2) {
        v.A = base_hollow(view, tau);
        return;
      }
      v.recursive = true;
      v.A_bar = conjugated_expectation(X, tau, out.A);
      v.S = SupportMatrix::zero(v.A_bar.index);
      for (int w = 0; w < vertices; ++w) {
        const Eigen::MatrixXd Av = restrict_to_vertex(view, v.A_bar, w);
        if (Av.isZero(0.0)) continue;
        if (view.vertex_residual_degree(tau, w) <= p.beta / (4 * (1 + eps)) + kTieTol) {
          const Eigen::MatrixXd plus = Av.cwiseMax(0.0);
          const Eigen::MatrixXd minus = Av - plus;
          v.S.values += 4 * (1 + eps) * (plus * plus + minus * minus);
        } else {
          v.S.values += 2 * (1 + eps) * Av * Av;
        }
      }
      v.A = v.A_bar;
      v.A.values += offdiag(v.S.values) / (k - 2);
    });
    for (std::size_t i = 0; i < level.size(); ++i) {
      out.A.emplace(level[i], std::move(values[i].A));
      if (values[i].recursive) {
        out.A_bar.emplace(level[i], std::move(values[i].A_bar));
        out.S.emplace(level[i], std::move(values[i].S));
      }
    }
  }
  return out;
}

double gamma_tree(const ColoringView& view, const Face& tau, int ground_index,
                  const ResolvedParams& p) {
  const auto support = view.complex().support(tau);
  if (!std::binary_search(support.begin(), support.end(), ground_index)) return 0.0;
  const std::vector<int> parent = tree_parents(view.instance().graph(), p.root);
  const int v = view.complex().ground()[ground_index].element;
  const auto un = view.open(tau);
  const int a = parent[v];
  const double b2 = p.beta * p.beta;
  if (a >= 0 && std::binary_search(un.begin(), un.end(), a)) {
    return 4.0 * (view.residual_degree(tau, v) + view.residual_degree(tau, a) - 1) / b2;
  }
  return 4.0 * view.residual_degree(tau, v) / b2;
}

double gamma_edge(const ColoringView& view, const Face& tau, int ground_index,
                  const ResolvedParams& p) {
  const auto support = view.complex().support(tau);
  if (!std::binary_search(support.begin(), support.end(), ground_index)) return 0.0;
  const int e = view.complex().ground()[ground_index].element;
  const double eps = p.epsilon;
  const double D2 = static_cast<double>(p.Delta) * p.Delta;
  return (1 + eps) * view.residual_degree(tau, e) / (2 * eps * eps * D2) +
         (1 + eps) * (1 + eps) * (2 + 3 * eps + eps * eps) / (std::pow(eps, 5) * D2);
}

MatrixFamily assemble(const WeightedComplex& X, const FaceMatrices& F, const FaceMatrices* A,
                      Variant variant) {
  MatrixFamily family(variant);
  for (const auto& [tau, Ft] : F) {
    const int k = X.codim(tau);
    const Eigen::VectorXd pi = stationary_on(X, tau, Ft.index);
    const Eigen::VectorXd root = pi.cwiseSqrt();
    Eigen::MatrixXd M = pi.asDiagonal() * Ft.values;
    if (A) M += root.asDiagonal() * A->at(tau).embed(Ft.index) * root.asDiagonal();
    M /= (k - 1);
    family.set(tau, SupportMatrix{Ft.index, 0.5 * (M + M.transpose())});
  }
  return family;
}

std::vector<ConditionVerdict> check_condition_F_vertex_2delta(const ColoringView& view,
                                                              const FaceMatrices& F,
                                                              const ResolvedParams&) {
  return check_condition(
      view, F, 1.0, [](const Face&, int) { return 0.0; },
      [](int k) { return static_cast<double>(k - 1) * (k - 1) / (3 * k - 1); });
}

std::vector<ConditionVerdict> check_condition_F_tree(const ColoringView& view,
                                                     const FaceMatrices& F,
                                                     const ResolvedParams& p) {
  return check_condition(
      view, F, 2.0, [&](const Face& tau, int y) { return gamma_tree(view, tau, y, p); },
      [&](int k) { return static_cast<double>(k - 1) * (k - 1) / (3 * k - 1) - 1.0 / p.beta; });
}

std::vector<ConditionVerdict> check_condition_F_edge(const ColoringView& view,
                                                     const FaceMatrices& F,
                                                     const ResolvedParams& p) {
  const double eps = p.epsilon;
  return check_condition(
      view, F, (2 + eps) / eps,
      [&](const Face& tau, int y) { return gamma_edge(view, tau, y, p); },
      [&](int k) {
        return static_cast<double>(k - 1) * (k - 1) / (3 * k - 1) - 1.0 / (2 * eps * p.Delta);
      });
}

namespace {

// Worst slack of lo <= A(a, b) <= hi over same-color pairs of conflicting
// elements, and max |A| elsewhere off the diagonal.
double pattern_slack(const ColoringView& view, const SupportMatrix& A,
                     const std::function<std::pair<double, double>(int a, int b)>& range) {
  const WeightedComplex& X = view.complex();
  const Graph& conflict = view.instance().conflict_graph();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < A.index.size(); ++a) {
    for (std::size_t b = 0; b < A.index.size(); ++b) {
      if (a == b) continue;
      const GroundPair& x = X.ground()[A.index[a]];
      const GroundPair& y = X.ground()[A.index[b]];
      const double value = A.values(a, b);
      if (x.color == y.color && conflict.adjacent(x.element, y.element)) {
        const auto [lo, hi] = range(A.index[a], A.index[b]);
        worst = std::min({worst, value - lo, hi - value});
      } else {
        worst = std::min(worst, -std::abs(value));
      }
    }
  }
  return worst;
}

}  // namespace

std::vector<BoundCheck> check_A_bounds_tree(const ColoringView& view, const FaceMatrices& A,
                                            double beta, double tol) {
  const WeightedComplex& X = view.complex();
  std::vector<BoundCheck> out;
  for (const auto& level : levels(X)) {
    for (const Face& tau : level) {
      BoundCheck c;
      c.key = X.key(tau);
      c.worst = pattern_slack(view, A.at(tau), [&](int, int) {
        return std::pair<double, double>{-1.0 / beta, 0.0};
      });
      c.ok = c.worst >= -tol;
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<BoundCheck> check_sandwich_edge(const ColoringView& view, const SplitFamily& family,
                                            double tol) {
  const WeightedComplex& X = view.complex();
  std::vector<BoundCheck> out;
  for (const Face& tau : connected_faces_from(view, 3)) {
    const SupportMatrix& Abar = family.A_bar.at(tau);
    const auto support = X.support(tau);
    BoundCheck c;
    c.key = X.key(tau);
    c.worst = pattern_slack(view, Abar, [&](int ya, int yb) {
      const int e = X.ground()[ya].element;
      const int f = X.ground()[yb].element;
      double lo = 0.0;
      double hi = 0.0;
      int count = 0;
      for (int g : view.open(tau)) {
        if (g == e || g == f) continue;
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
        for (int z : support) {
          if (X.ground()[z].element != g) continue;
          const double child = entry(family.A.at(tau.with(z)), ya, yb);
          mn = std::min(mn, child);
          mx = std::max(mx, child);
        }
        lo += mn;
        hi += mx;
        ++count;
      }
      return std::pair<double, double>{lo / count, hi / count};
    });
    c.ok = c.worst >= -tol;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<BoundCheck> check_A_bounds_edge(const ColoringView& view, const SplitFamily& family,
                                            const ResolvedParams& p, double tol) {
  const WeightedComplex& X = view.complex();
  const double beta = p.beta;
  const double eps = p.epsilon;
  std::vector<BoundCheck> out;
  for (const Face& tau : connected_faces_from(view, 2)) {
    const SupportMatrix& A = family.A.at(tau);
    BoundCheck c;
    c.key = X.key(tau);
    c.worst = pattern_slack(view, A, [&](int ya, int yb) {
      const auto e = endpoints(view, ya);
      const auto f = endpoints(view, yb);
      const int v = touches(f, e.first) ? e.first : e.second;
      const int d = view.vertex_residual_degree(tau, v);
      if (d <= beta / (4 * (1 + eps)) + kTieTol) {
        return std::pair<double, double>{-1.0 / beta, 4 * (1 + eps) * (d - 2) / (beta * beta)};
      }
      const double denom = 1.5 * beta - 2 * (1 + 2 * eps) * d;
      if (!(denom > 0)) {
        return std::pair<double, double>{std::numeric_limits<double>::infinity(),
                                         -std::numeric_limits<double>::infinity()};
      }
      return std::pair<double, double>{-1.0 / denom, 1.0 / denom};
    });
    c.ok = c.worst >= -tol;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<BoundCheck> check_edge_ingredients(const ColoringView& view, const SplitFamily& family,
                                               const ResolvedParams& p, double tol) {
  const WeightedComplex& X = view.complex();
  const double eps = p.epsilon;
  const double entry_bound = 1.0 / (2 * eps * p.Delta);
  std::vector<Face> faces = connected_faces_from(view, 3);
  std::vector<BoundCheck> out(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) {
    const Face& tau = faces[i];
    const int k = X.codim(tau);
    const SupportMatrix& A = family.A.at(tau);
    const SupportMatrix& Abar = family.A_bar.at(tau);
    const SupportMatrix& S = family.S.at(tau);
    BoundCheck& c = out[i];
    c.key = X.key(tau);
    c.worst = A.values.size() ? entry_bound - A.values.cwiseAbs().maxCoeff() : entry_bound;
    const Eigen::VectorXd gamma = [&] {
      Eigen::VectorXd g(static_cast<Eigen::Index>(S.index.size()));
      for (std::size_t a = 0; a < S.index.size(); ++a) g(a) = gamma_edge(view, tau, S.index[a], p);
      return g;
    }();
    const Eigen::MatrixXd off = offdiag(S.values);
    const Eigen::MatrixXd need =
        Eigen::MatrixXd(S.values.diagonal().asDiagonal()) +
        (3 + eps + 2 / eps) * off * off / (static_cast<double>(k - 2) * (k - 2));
    c.worst = std::min(c.worst, psd_margin(need, Eigen::MatrixXd(gamma.asDiagonal())));
    c.worst = std::min(c.worst, psd_margin((1 + eps) * Abar.values * Abar.values, S.values));
    c.ok = c.worst >= -tol;
  });
  return out;
}

std::vector<BoundCheck> check_tree_ingredients(const ColoringView& view, const FaceMatrices& A,
                                               const ResolvedParams& p, double tol) {
  const WeightedComplex& X = view.complex();
  std::vector<Face> faces = connected_faces_from(view, 3);
  std::vector<BoundCheck> out(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) {
    const Face& tau = faces[i];
    const SupportMatrix& At = A.at(tau);
    BoundCheck& c = out[i];
    c.key = X.key(tau);
    c.worst = pattern_slack(view, At, [&](int, int) {
      return std::pair<double, double>{-1.0 / p.beta, 0.0};
    });
    Eigen::VectorXd gamma(static_cast<Eigen::Index>(At.index.size()));
    for (std::size_t a = 0; a < At.index.size(); ++a) gamma(a) = gamma_tree(view, tau, At.index[a], p);
    c.worst = std::min(c.worst,
                       psd_margin(2.0 * At.values * At.values, Eigen::MatrixXd(gamma.asDiagonal())));
    c.ok = c.worst >= -tol;
  });
  return out;
}

bool line_graph_square_check(const Graph& g, const std::vector<double>& weights, double tol) {
  const Graph lg = line_graph(g);
  if (static_cast<int>(weights.size()) != lg.edge_count()) {
    throw InvalidInput("need one weight per line-graph edge");
  }
  const int m = g.edge_count();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (int id = 0; id < lg.edge_count(); ++id) {
    const auto [e, f] = lg.edges()[id];
    A(e, f) = A(f, e) = weights[id];
  }
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, m);
  for (int v = 0; v < g.vertex_count(); ++v) {
    Eigen::MatrixXd Av = Eigen::MatrixXd::Zero(m, m);
    for (int e = 0; e < m; ++e) {
      for (int f = 0; f < m; ++f) {
        if (e != f && touches(g.edges()[e], v) && touches(g.edges()[f], v)) Av(e, f) = A(e, f);
      }
    }
    rhs += 2.0 * Av * Av;
  }
  return psd_leq(A * A, rhs, tol);
}

RegimeRun run_regime(const ListColoringInstance& inst, const WeightedComplex& X,
                     const CertificateParams& params) {
  RegimeRun run{resolve(inst, params), {}, {}, MatrixFamily(Variant::kFull), {}, {}, {}, {}, {},
                {}, {}, {}, 0};
  const ResolvedParams& p = run.params;
  run.status = regime_status(inst, p);
  ColoringView view(inst, X);
  std::unordered_map<std::string, bool> ingredient_ok;
  switch (p.regime) {
    case Regime::kVertex2Delta:
      run.family.F = build_F_vertex_2delta(view, p);
      run.conditions = check_condition_F_vertex_2delta(view, run.family.F, p);
      break;
    case Regime::kVertexTree:
      run.family.F = build_F_tree(view, p);
      run.family.A = build_A_tree(view);
      run.conditions = check_condition_F_tree(view, run.family.F, p);
      run.a_bounds = check_A_bounds_tree(view, run.family.A, p.beta);
      run.ingredients = check_tree_ingredients(view, run.family.A, p);
      break;
    case Regime::kEdge: {
      SplitFamily a = build_A_edge(view, p);
      run.family.A = std::move(a.A);
      run.family.A_bar = std::move(a.A_bar);
      run.family.S = std::move(a.S);
      run.family.F = build_F_edge(view, p);
      run.conditions = check_condition_F_edge(view, run.family.F, p);
      run.sandwich = check_sandwich_edge(view, run.family);
      run.entry_bounds = check_A_bounds_edge(view, run.family, p);
      run.ingredients = check_edge_ingredients(view, run.family, p);
      break;
    }
  }
  for (const auto& c : run.ingredients) ingredient_ok[c.key] = c.ok;
  if (p.regime != Regime::kVertex2Delta) {
    for (const Face& tau : connected_faces_from(view, 3)) {
      auto& row = run.gamma[X.key(tau)];
      for (int y : X.support(tau)) {
        row[X.key(Face().with(y))] = p.regime == Regime::kEdge ? gamma_edge(view, tau, y, p)
                                                                : gamma_tree(view, tau, y, p);
      }
    }
  }
  const bool has_A = p.regime != Regime::kVertex2Delta;
  run.M = assemble(X, run.family.F, has_A ? &run.family.A : nullptr);
  run.report = certify(X, run.M);

  std::unordered_map<std::string, bool> condition_ok;
  for (const auto& c : run.conditions) condition_ok[c.key] = c.ok();
  std::unordered_map<Face, bool, FaceHash> holds;
  std::size_t next = 0;
  for (const auto& level : levels(X)) {
    for (const Face& tau : level) {
      const FaceVerdict& fv = run.report.faces.at(next++);
      PairingRecord r;
      r.key = fv.key;
      r.codim = fv.codim;
      r.lambda2 = fv.lambda2;
      const SupportMatrix& Ft = run.family.F.at(tau);
      Eigen::MatrixXd sum = Ft.values;
      if (has_A) sum += run.family.A.at(tau).embed(Ft.index);
      r.bound = spectral_radius_sym(sum) / (r.codim - 1);
      bool own = false;
      if (!view.connected(tau)) {
        own = fv.product_ok.value_or(false);
      } else if (r.codim == 2) {
        own = fv.base_ok.value_or(false);
      } else {
        own = condition_ok.at(r.key) && (!has_A || ingredient_ok.at(r.key));
      }
      for (int x : X.support(tau)) {
        auto it = holds.find(tau.with(x));
        if (it != holds.end()) own = own && it->second;
      }
      holds[tau] = own;
      r.conditions_hold = own;
      r.sound = !own || r.lambda2 <= r.bound + kSoundnessTol;
      if (!r.sound) ++run.pairing_violations;
      run.pairing.push_back(std::move(r));
    }
  }
  return run;
}

}  // namespace hdxcolor
