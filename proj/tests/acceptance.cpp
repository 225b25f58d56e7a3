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

// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is 0 iff the failing set equals the --expect-fail list.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "families.hpp"
#include "hdxcolor/certificates.hpp"
#include "hdxcolor/errors.hpp"
#include "hdxcolor/io.hpp"
#include "hdxcolor/sampler.hpp"
#include "hdxcolor/spectral.hpp"
#include "hdxcolor/trickledown.hpp"
#include "oracles.hpp"

using namespace hdxcolor;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

ListColoringInstance uniform(ElementKind kind, int n, const std::vector<Edge>& e, int q) {
  return ListColoringInstance::uniform(kind, Graph::from_edges(n, e), q);
}

Eigen::MatrixXd restrict(const Eigen::MatrixXd& M, const std::vector<int>& s) {
  Eigen::MatrixXd out(s.size(), s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) out(a, b) = M(s[a], s[b]);
  }
  return out;
}

Eigen::VectorXd restrict(const Eigen::VectorXd& v, const std::vector<int>& s) {
  Eigen::VectorXd out(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) out(a) = v(s[a]);
  return out;
}

const std::vector<Edge> kP2 = {{0, 1}};
const std::vector<Edge> kP3 = {{0, 1}, {1, 2}};
const std::vector<Edge> kP4 = {{0, 1}, {1, 2}, {2, 3}};
const std::vector<Edge> kK3 = {{0, 1}, {1, 2}, {0, 2}};
const std::vector<Edge> kK4 = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
const std::vector<Edge> kStar2 = {{0, 1}, {0, 2}};
const std::vector<Edge> kStar3 = {{0, 1}, {0, 2}, {0, 3}};

// Lemma: Pi P = E_x Pi_x P_x and Pi P^2 = E_x pi_x pi_x^T, plus agreement of
// the library walks with the brute-force definition.
Outcome garland() {
  struct Case {
    ElementKind kind;
    int n;
    std::vector<Edge> edges;
  };
  const std::vector<Case> cases = {
      {ElementKind::kVertex, 2, kP2},    {ElementKind::kVertex, 3, kP3},
      {ElementKind::kVertex, 3, kK3},    {ElementKind::kVertex, 4, kK4},
      {ElementKind::kEdge, 3, kStar2},   {ElementKind::kEdge, 4, kStar3},
      {ElementKind::kEdge, 4, kP4}};
  double worst = 0;
  int faces = 0;
  int empty = 0;
  for (const auto& c : cases) {
    for (int q : {3, 4, 5}) {
      auto inst = uniform(c.kind, c.n, c.edges, q);
      if (oracle::colorings(inst).empty()) {
        ++empty;
        continue;
      }
      WeightedComplex X = build_complex(inst);
      const int g = X.ground_size();
      for (const Face& tau : oracle::all_faces(X)) {
        const int k = X.codim(tau);
        if (k < 2) continue;
        ++faces;
        const LocalWalk w = local_walk(X, tau);
        const oracle::Walk o = oracle::local_walk(X, tau);
        worst = std::max(worst, oracle::max_abs(w.transition - o.P));
        worst = std::max(worst, oracle::max_abs(w.stationary - o.pi));
        const Eigen::MatrixXd PiP = w.stationary.asDiagonal() * w.transition;
        Eigen::MatrixXd second = Eigen::MatrixXd::Zero(g, g);
        Eigen::MatrixXd first = Eigen::MatrixXd::Zero(g, g);
        for (int x : w.support) {
          const Face tx = tau.with(x);
          Eigen::VectorXd pix = Eigen::VectorXd::Zero(g);
          const double wx = oracle::weight_above(X, tx);
          for (int y : X.support(tx)) pix(y) = oracle::weight_above(X, tx.with(y)) / ((k - 1) * wx);
          second += w.stationary(x) * pix * pix.transpose();
          if (k >= 3) {
            const LocalWalk lx = local_walk(X, tx);
            worst = std::max(worst, oracle::max_abs(lx.stationary - pix));
            first += w.stationary(x) * (lx.stationary.asDiagonal() * lx.transition);
          }
        }
        worst = std::max(worst, oracle::max_abs(PiP * w.transition - second));
        if (k >= 3) worst = std::max(worst, oracle::max_abs(PiP - first));
      }
    }
  }
  return {worst <= 1e-12 && faces > 0, "max error " + fmt(worst) + " over " +
                                           std::to_string(faces) + " faces (" +
                                           std::to_string(empty) + " instances have no coloring)"};
}

WeightedComplex random_weighted(std::mt19937_64& rng, int n, int label_offset) {
  while (true) {
    Graph g = oracle::random_graph(rng, n, 0.7);
    std::vector<std::vector<int>> lists(n);
    for (auto& l : lists) l = oracle::random_list(rng, 4, 2 + static_cast<int>(rng() % 3));
    ListColoringInstance inst(ElementKind::kVertex, g, lists);
    const auto cols = oracle::colorings(inst);
    if (cols.empty()) continue;
    std::uniform_real_distribution<double> u(0.2, 1.0);
    std::vector<double> w(cols.size());
    for (double& x : w) x = u(rng);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = label_offset + i;
    return WeightedComplex::from_colorings(labels, cols, w, g);
  }
}

// Three elements on a path or triangle with lists of size 3..5 from 6 colors.
WeightedComplex random_link_complex(std::mt19937_64& rng) {
  while (true) {
    std::vector<Edge> e = {{0, 1}, {1, 2}};
    if (rng() % 2) e.emplace_back(0, 2);
    const Graph g = Graph::from_edges(3, e);
    std::vector<std::vector<int>> lists(3);
    for (auto& l : lists) l = oracle::random_list(rng, 6, 3 + static_cast<int>(rng() % 3));
    ListColoringInstance inst(ElementKind::kVertex, g, lists);
    const auto cols = oracle::colorings(inst);
    if (cols.empty()) continue;
    std::uniform_real_distribution<double> u(0.6, 1.0);
    std::vector<double> w(cols.size());
    for (double& x : w) x = u(rng);
    return WeightedComplex::from_colorings({0, 1, 2}, cols, w, g);
  }
}

// P_Z - (d_Z+1)/d_Z 1 pi_Z^T is block diagonal with blocks
// (d_X/d_Z) P_X - ((d_X+1)/d_Z) 1 pi_X^T.
Outcome product_decomposition() {
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 2;
    std::vector<WeightedComplex> factors;
    int offset = 0;
    for (int i = 0; i < m; ++i) {
      const int n = 1 + static_cast<int>(rng() % 3);
      factors.push_back(random_weighted(rng, n, offset));
      offset += n;
    }
    WeightedComplex Z = product(factors);
    const int dZ = Z.dimension();
    const LocalWalk wz = local_walk(Z, Face());
    const int gz = Z.ground_size();
    Eigen::MatrixXd lhs = wz.transition - (dZ + 1.0) / dZ * Eigen::VectorXd::Ones(gz) *
                                              wz.stationary.transpose();
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(gz, gz);
    for (const auto& X : factors) {
      const int dX = X.dimension();
      const Eigen::MatrixXd PX = dX > 0 ? local_walk(X, Face()).transition
                                        : Eigen::MatrixXd::Zero(X.ground_size(), X.ground_size());
      const Eigen::VectorXd piX = oracle::local_walk(X, Face()).pi.size() && dX > 0
                                      ? local_walk(X, Face()).stationary
                                      : Eigen::VectorXd::Constant(X.ground_size(), 0.0);
      Eigen::VectorXd pi = piX;
      if (dX == 0) {
        for (std::size_t s = 0; s < X.facets().size(); ++s) {
          for (int y : X.facets()[s].indices()) pi(y) += X.facet_weights()[s];
        }
        pi /= pi.sum();
      }
      std::vector<int> map(X.ground_size());
      for (int y = 0; y < X.ground_size(); ++y) {
        const GroundPair p = X.ground()[y];
        const int label = X.element_labels()[p.element];
        const auto& zl = Z.element_labels();
        const int slot = static_cast<int>(std::find(zl.begin(), zl.end(), label) - zl.begin());
        map[y] = Z.ground_index(slot, p.color);
      }
      for (int a = 0; a < X.ground_size(); ++a) {
        for (int b = 0; b < X.ground_size(); ++b) {
          rhs(map[a], map[b]) = static_cast<double>(dX) / dZ * PX(a, b) - (dX + 1.0) / dZ * pi(b);
        }
      }
    }
    worst = std::max(worst, oracle::max_abs(lhs - rhs));
  }
  return {worst <= 1e-12, "max error " + fmt(worst) + " over 20 products"};
}

// M_x = lambda Pi_x, alpha = 1 - lambda, M = lambda/(1-lambda) Pi.
Outcome vanilla_trickle() {
  std::mt19937_64 rng(77);
  int accepted = 0;
  int attempts = 0;
  int failures = 0;
  double worst_gap = -1;
  while (accepted < 50 && attempts < 5000) {
    ++attempts;
    WeightedComplex X = random_link_complex(rng);
    bool ok = true;
    double lam = 0;
    for (int x : X.support(Face())) {
      const Face f = Face().with(x);
      if (X.components(f).size() != 1) {
        ok = false;
        break;
      }
      lam = std::max(lam, lambda2(local_walk(X, f)));
    }
    if (!ok || lam > 0.5 || lambda2(local_walk(X, Face())) >= 1 - 1e-9) continue;
    ++accepted;
    std::map<int, SupportMatrix> children;
    for (int x : X.support(Face())) {
      const Face c = Face().with(x);
      const LocalWalk w = local_walk(X, c);
      SupportMatrix M = SupportMatrix::zero(X.support(c));
      for (std::size_t a = 0; a < M.index.size(); ++a) M.values(a, a) = lam * w.stationary(M.index[a]);
      children[x] = M;
    }
    const LocalWalk w = local_walk(X, Face());
    SupportMatrix M = SupportMatrix::zero(X.support(Face()));
    for (std::size_t a = 0; a < M.index.size(); ++a) {
      M.values(a, a) = lam / (1 - lam) * w.stationary(M.index[a]);
    }
    const TrickleStepVerdict v = trickle_step(X, Face(), children, M, 1 - lam);
    const double slack = v.lambda2 - lam / (1 - lam);
    worst_gap = std::max(worst_gap, slack);
    if (!v.preconditions_ok() || !v.conclusion_ok || slack > 1e-8) ++failures;
  }
  return {accepted == 50 && failures == 0,
          std::to_string(accepted) + " complexes, " + std::to_string(failures) +
              " failures, max lambda2 - lambda/(1-lambda) = " + fmt(worst_gap)};
}

struct SoundnessTally {
  int runs = 0;
  int skipped = 0;
  int counterexamples = 0;
  int held = 0;
};

void tally_run(SoundnessTally& t, const ListColoringInstance& inst, const CertificateParams& p) {
  try {
    WeightedComplex X = build_complex(inst, 4000);
    RegimeRun run = run_regime(inst, X, p);
    ++t.runs;
    t.counterexamples += run.pairing_violations + run.report.soundness_violations;
    for (const auto& r : run.pairing) t.held += r.conditions_hold;
  } catch (const RegimeViolation&) {
    ++t.skipped;
  } catch (const ResourceLimit&) {
    ++t.skipped;
  } catch (const PreconditionViolation&) {
    ++t.skipped;
  } catch (const EmptyComplex&) {
    ++t.skipped;
  }
}

Outcome soundness() {
  SoundnessTally t;
  const std::vector<double> eps = {0.1, 0.5, 1.0, 2.0, 10.0};
  struct G {
    int n;
    std::vector<Edge> e;
  };
  const std::vector<G> vertex_graphs = {{2, kP2}, {3, kP3}, {3, kK3}, {4, kP4}, {4, kStar3}};
  for (const auto& g : vertex_graphs) {
    const Graph graph = Graph::from_edges(g.n, g.e);
    for (int q : {3, 4, 6, 10, 24}) {
      auto inst = ListColoringInstance::uniform(ElementKind::kVertex, graph, q);
      for (double e : eps) {
        tally_run(t, inst, {Regime::kVertex2Delta, e, std::nullopt, std::nullopt, 0});
        if (graph.is_tree()) {
          for (int root = 0; root < g.n; ++root) {
            tally_run(t, inst, {Regime::kVertexTree, e, std::nullopt, std::nullopt, root});
          }
        }
      }
    }
  }
  const std::vector<G> edge_graphs = {{3, kStar2}, {4, kStar3}, {4, kP4}, {3, kK3}};
  for (const auto& g : edge_graphs) {
    for (int q : {3, 4, 5, 7}) {
      auto inst = uniform(ElementKind::kEdge, g.n, g.e, q);
      for (double e : eps) tally_run(t, inst, {Regime::kEdge, e, std::nullopt, std::nullopt, 0});
    }
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    Graph tree = oracle::random_tree(rng, 2 + trial % 4);
    std::vector<std::vector<int>> lists(tree.vertex_count());
    for (int v = 0; v < tree.vertex_count(); ++v) {
      lists[v] = oracle::random_list(rng, 7, tree.degree(v) + 1 + static_cast<int>(rng() % 3));
    }
    ListColoringInstance inst(ElementKind::kVertex, tree, lists);
    tally_run(t, inst, {Regime::kVertexTree, 0.5, std::nullopt, std::nullopt, 0});
    tally_run(t, inst, {Regime::kVertex2Delta, 1.0, std::nullopt, std::nullopt, 0});
  }
  // Scalar families, passing and deliberately inflated.
  int vanilla_runs = 0;
  for (const auto& g : vertex_graphs) {
    for (int q : {5, 10}) {
      auto inst = uniform(ElementKind::kVertex, g.n, g.e, q);
      WeightedComplex X = build_complex(inst);
      for (double scale : {0.5, 1.0, 10.0}) {
        try {
          CertificateReport r = certify(X, fixtures::vanilla_family(X, fixtures::vanilla_mu(X), scale));
          ++vanilla_runs;
          t.counterexamples += r.soundness_violations;
        } catch (const PreconditionViolation&) {
          ++t.skipped;
        }
      }
    }
  }
  return {t.counterexamples == 0 && t.held > 0,
          std::to_string(t.runs) + " regime runs + " + std::to_string(vanilla_runs) +
              " scalar-family runs, " + std::to_string(t.held) + " faces with conditions holding, " +
              std::to_string(t.counterexamples) + " counterexamples, " +
              std::to_string(t.skipped) + " skipped"};
}

Outcome base_case() {
  std::mt19937_64 rng(31);
  int tested = 0;
  int failures = 0;
  double worst = 1;
  std::string example;
  while (tested < 100) {
    const int palette = 8;
    const bool embedded = tested % 2 == 1;
    const int n = embedded ? 3 : 2;
    std::vector<Edge> e = {{0, 1}};
    if (embedded) {
      e.emplace_back(0, 2);
      if (rng() % 2) e.emplace_back(1, 2);
    }
    std::vector<std::vector<int>> lists(n);
    for (auto& l : lists) l = oracle::random_list(rng, palette, 2 + static_cast<int>(rng() % 5));
    ListColoringInstance inst(ElementKind::kVertex, Graph::from_edges(n, e), lists);
    if (oracle::colorings(inst).empty()) continue;
    WeightedComplex X = build_complex(inst);
    Face tau;
    if (embedded) {
      const auto& l2 = lists[2];
      tau = Face().with(X.ground_index(2, l2[rng() % l2.size()]));
      if (!X.is_face(tau)) continue;
    }
    ColoringView view(inst, X);
    if (view.list_size(tau, 0) < 2 || view.list_size(tau, 1) < 2) continue;
    const LocalWalk w = local_walk(X, tau);
    const std::vector<int>& s = w.support;
    const Eigen::MatrixXd P = restrict(w.transition, s);
    const Eigen::VectorXd pi = restrict(w.stationary, s);
    Eigen::MatrixXd lower = pi.asDiagonal() * P - 2 * pi * pi.transpose();
    lower = 0.5 * (lower + lower.transpose());
    const Eigen::MatrixXd M = base_case_matrix(view, tau).embed(s);
    worst = std::min(worst, psd_margin(lower, M));
    if (!psd_leq(lower, M, 1e-9)) {
      ++failures;
      if (example.empty()) {
        std::set<int> colors[2];
        for (int y : X.support(tau)) colors[X.ground()[y].element].insert(X.ground()[y].color);
        int shared = 0;
        for (int c : colors[0]) shared += colors[1].count(c);
        example = "; e.g. residual list sizes " + std::to_string(view.list_size(tau, 0)) + " and " +
                  std::to_string(view.list_size(tau, 1)) + " sharing " + std::to_string(shared) +
                  " colors";
      }
    }
    ++tested;
  }
  return {failures == 0, std::to_string(tested) + " residual edges, " + std::to_string(failures) +
                             " failures, smallest margin " + fmt(worst) + example};
}

Outcome tree_bounds() {
  std::mt19937_64 rng(64);
  int trees = 0;
  int bad = 0;
  int entries = 0;
  while (trees < 25) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Graph g = oracle::random_tree(rng, n);
    if (g.max_degree() > 3) continue;
    const double eps = std::uniform_real_distribution<double>(0.2, 0.7)(rng);
    const double beta = eps * g.max_degree();
    std::vector<std::vector<int>> lists(n);
    const int palette = static_cast<int>(std::ceil(beta)) + g.max_degree() + 2;
    for (int v = 0; v < n; ++v) {
      const int size = static_cast<int>(std::ceil(beta - 1e-12)) + g.degree(v) +
                       static_cast<int>(rng() % 2);
      lists[v] = oracle::random_list(rng, palette, size);
    }
    ListColoringInstance inst(ElementKind::kVertex, g, lists);
    if (!is_beta_extra(inst, beta)) continue;
    WeightedComplex X = build_complex(inst);
    ColoringView view(inst, X);
    const FaceMatrices A = build_A_tree(view);
    for (const auto& c : check_A_bounds_tree(view, A, beta, 1e-10)) {
      ++entries;
      bad += !c.ok;
    }
    ++trees;
  }
  return {bad == 0, std::to_string(trees) + " trees, " + std::to_string(entries) +
                        " faces checked, " + std::to_string(bad) + " out of [-1/beta, 0]"};
}

Outcome edge_sandwich() {
  std::mt19937_64 rng(91);
  int graphs = 0;
  int faces = 0;
  int bad = 0;
  double worst = 0;
  std::string first_bad;
  while (graphs < 20) {
    Graph g = oracle::random_graph(rng, 2 + static_cast<int>(rng() % 4), 0.6);
    if (g.edge_count() < 2 || g.edge_count() > 5) continue;
    const Graph L = line_graph(g);
    auto inst = ListColoringInstance::uniform(ElementKind::kEdge, g, L.max_degree() + 2);
    WeightedComplex X = build_complex(inst, 4000);
    ColoringView view(inst, X);
    const ResolvedParams p = resolve(inst, {Regime::kEdge, 0.1, std::nullopt, std::nullopt, 0});
    const SplitFamily fam = build_A_edge(view, p);
    for (const auto& c : check_sandwich_edge(view, fam, 1e-10)) {
      ++faces;
      if (!c.ok) {
        ++bad;
        worst = std::min(worst, c.worst);
        if (first_bad.empty()) first_bad = " e.g. graph with " + std::to_string(g.edge_count()) +
                                           " edges, face {" + c.key + "}";
      }
    }
    ++graphs;
  }
  return {bad == 0, std::to_string(graphs) + " graphs, " + std::to_string(faces) + " faces, " +
                        std::to_string(bad) + " outside the child bounds (worst slack " +
                        fmt(worst) + ")" + first_bad};
}

Outcome line_graph_square() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int fails = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Graph g = oracle::random_graph(rng, 2 + static_cast<int>(rng() % 7), 0.5);
    std::vector<double> w(line_graph(g).edge_count());
    for (double& x : w) x = u(rng);
    fails += !line_graph_square_check(g, w, 1e-9);
  }
  return {fails == 0, "200 line graphs, " + std::to_string(fails) + " failures"};
}

Outcome matrix_facts() {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.05, 5.0);
  int fails[3] = {0, 0, 0};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    Eigen::MatrixXd A = oracle::random_symmetric(rng, n);
    Eigen::MatrixXd I = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      if (rng() % 3 == 0) {
        A.row(i).setZero();
        A.col(i).setZero();
      } else {
        I(i, i) = 1;
      }
    }
    const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    fails[0] += oracle::min_eig(norm * I - A) < -1e-9;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 5;
    const int k = 1 + (trial / 5) % 4;
    Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(m, k, [&] { return u(rng) - 2.5; });
    Eigen::MatrixXd B = Eigen::MatrixXd::NullaryExpr(m, k, [&] { return u(rng) - 2.5; });
    const double e = u(rng);
    const Eigen::MatrixXd cross = A * B.transpose() + B * A.transpose();
    const Eigen::MatrixXd AA = A * A.transpose();
    const Eigen::MatrixXd BB = B * B.transpose();
    const Eigen::MatrixXd sum = (A + B) * (A + B).transpose();
    const double scale = 1 + AA.norm() + BB.norm();
    fails[1] += oracle::min_eig(e * AA + BB / e - cross) < -1e-9 * scale * (e + 1 / e);
    fails[1] += oracle::min_eig((1 + e) * AA + (1 + 1 / e) * BB - sum) < -1e-9 * scale * (e + 1 / e);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const double alpha = std::uniform_real_distribution<double>(0.5, 3.0)(rng);
    Eigen::MatrixXd B = oracle::random_symmetric(rng, n);
    const double top = oracle::min_eig(-B) * -1;
    const double cap = 1 / (2 * alpha);
    if (top > cap) B -= (top - cap + 0.01) * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd TB = B * (Id - alpha * B);
    Eigen::MatrixXd C = oracle::random_symmetric(rng, n, 0.3);
    const Eigen::MatrixXd TA = 0.5 * (TB + TB.transpose()) - C * C.transpose();
    const Eigen::MatrixXd A = half_minus_sqrt_map(alpha * TA) / alpha;
    bool ok = false;
    try {
      ok = monotone_lemma_check(A, B, alpha, 1e-9) && oracle::min_eig(B - A) >= -1e-8;
    } catch (const PreconditionViolation&) {
      ok = false;
    }
    fails[2] += !ok;
  }
  return {fails[0] + fails[1] + fails[2] == 0,
          "row-sum " + std::to_string(fails[0]) + "/200, cross-term " + std::to_string(fails[1]) +
              "/400, monotone " + std::to_string(fails[2]) + "/200 failures"};
}

Outcome sampler() {
  bool pass = true;
  std::string detail;
  struct Case {
    std::string name;
    ListColoringInstance inst;
  };
  const std::vector<Case> cases = {{"P2 q=3", uniform(ElementKind::kVertex, 2, kP2, 3)},
                                   {"P4-edge q=4", uniform(ElementKind::kEdge, 4, kP4, 4)}};
  for (const auto& c : cases) {
    WeightedComplex X = build_complex(c.inst);
    const int nf = static_cast<int>(X.facets().size());
    const Eigen::MatrixXd P = Eigen::MatrixXd(down_up_walk(X));
    const Eigen::RowVectorXd uni = Eigen::RowVectorXd::Constant(nf, 1.0 / nf);
    const double dev = (uni * P - uni).cwiseAbs().maxCoeff();
    const double oracle_err = oracle::max_abs(P - oracle::down_up(X));

    std::vector<int> start(c.inst.element_count());
    for (int y : X.facets()[0].indices()) start[X.ground()[y].element] = X.ground()[y].color;
    Rng rng(2718);
    const int N = 100000;
    std::vector<int> counts(nf, 0);
    for (int t = 0; t < N; ++t) {
      ChainState s{start};
      glauber_step(s, c.inst, rng);
      ++counts[facet_of(X, s.coloring)];
    }
    double worst_z = 0;
    bool freq_ok = true;
    for (int f = 0; f < nf; ++f) {
      const double p = P(0, f);
      const double freq = static_cast<double>(counts[f]) / N;
      if (p == 0) {
        freq_ok = freq_ok && counts[f] == 0;
        continue;
      }
      const double z = std::abs(freq - p) / std::sqrt(p * (1 - p) / N);
      worst_z = std::max(worst_z, z);
      freq_ok = freq_ok && z <= 4;
    }
    const SpectrumReport r = exact_spectrum(c.inst, 10000);
    const bool gap_ok = r.gap >= r.local_bound - 1e-9;
    const bool corrected_ok = r.gap >= r.local_bound_corrected - 1e-9;
    pass = pass && dev <= 1e-12 && oracle_err <= 1e-12 && freq_ok && gap_ok;
    detail += c.name + ": stationary dev " + fmt(dev) + ", max z " + fmt(worst_z) + ", gap " +
              fmt(r.gap) + (gap_ok ? " >= " : " < ") + "bound " + fmt(r.local_bound) +
              " (1/(d+1) bound " + fmt(r.local_bound_corrected) +
              (corrected_ok ? " holds" : " fails") + "); ";
  }
  return {pass, detail};
}

Outcome known_values() {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(6, 6);
  for (int c = 0; c < 3; ++c) {
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c != c2) P(c, 3 + c2) = P(3 + c2, c) = 0.5;
    }
  }
  const double closed = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(P).eigenvalues()(4);
  WeightedComplex X = build_complex(uniform(ElementKind::kVertex, 2, kP2, 3));
  const double lib = lambda2(local_walk(X, Face()));
  const double bound = down_up_gap_bound(local_profile(X));
  const bool pass = std::abs(lib - 0.5) <= 1e-12 && std::abs(closed - 0.5) <= 1e-12 &&
                    std::abs(bound - 0.5) <= 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf, "lambda2 %.17g (closed form %.17g), gap bound %.17g", lib, closed,
                bound);
  return {pass, buf};
}

Outcome cli_end_to_end(const std::string& data, const std::string& cli) {
  const std::vector<std::string> runs = {
      "--graph " + data + "/p2.txt --lists all:3 --regime vertex_2delta --epsilon 1",
      "--graph " + data + "/p3.txt --lists all:4 --regime vertex_tree --epsilon 1 --root 1",
      "--graph " + data + "/star3.txt --lists all:5 --kind edge --regime edge --epsilon 0.1"};
  bool pass = true;
  std::string detail;
  for (const auto& args : runs) {
    const auto t0 = std::chrono::steady_clock::now();
    FILE* pipe = popen((cli + " certify " + args + " 2>/dev/null").c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while (pipe && (n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pipe ? pclose(pipe) : -1;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    bool valid = false;
    try {
      valid = validate(Json::parse(out), schema(DocumentKind::kCertify)).empty();
    } catch (const std::exception&) {
      valid = false;
    }
    pass = pass && code == 0 && valid && secs < 60;
    detail += "exit " + std::to_string(code) + (valid ? " valid " : " invalid ") + fmt(secs) + "s; ";
  }
  return {pass, detail};
}

std::set<int> parse_set(const std::string& text) {
  std::set<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  std::string data = HDX_DATA_DIR;
  std::string cli = HDX_CLI_PATH;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--expect-fail") expected = parse_set(argv[i + 1]);
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Garland identities", garland},
      {"product decomposition", product_decomposition},
      {"vanilla trickle-down", vanilla_trickle},
      {"soundness implication", soundness},
      {"base-case inequality", base_case},
      {"tree A-bounds", tree_bounds},
      {"edge A sandwich", edge_sandwich},
      {"line-graph square lemma", line_graph_square},
      {"matrix facts", matrix_facts},
      {"sampler correctness", sampler},
      {"known-value regression", known_values},
      {"CLI end to end", [&] { return cli_end_to_end(data, cli); }},
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) failed.insert(id);
    std::printf("criterion %2d %s  %s: %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  if (failed != expected) {
    std::printf("failing set differs from the expected set\n");
    return 1;
  }
  return 0;
}
