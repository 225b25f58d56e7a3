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

#include "hdxcolor/trickledown.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdxcolor/errors.hpp"
#include "hdxcolor/parallel.hpp"
#include "hdxcolor/spectral.hpp"

namespace hdxcolor {
namespace {

constexpr double kConnectivityTol = 1e-9;
constexpr double kSymmetryTol = 1e-10;

Eigen::MatrixXd sym(const Eigen::MatrixXd& A) { return 0.5 * (A + A.transpose()); }

// Pi^{-1} on the support, as a diagonal matrix.
Eigen::MatrixXd pi_inverse(const Eigen::VectorXd& pi) {
  return pi.cwiseInverse().asDiagonal();
}

double rho_on(const LinkData& link, const Eigen::MatrixXd& M) {
  return spectral_radius_similarity(link.pi, M);
}

double link_lambda2(const LinkData& link) {
  return lambda2_reversible(link.P, link.pi);
}

}  // namespace

const char* to_string(Variant v) { return v == Variant::kFull ? "full" : "inductive"; }

Variant parse_variant(const std::string& text) {
  if (text == "full") return Variant::kFull;
  if (text == "inductive") return Variant::kInductive;
  throw InvalidInput("unknown variant '" + text + "' (expected full or inductive)");
}

double threshold_constant(Variant v, int k) {
  const double kk = k;
  return v == Variant::kFull ? (kk - 1) / (3 * kk - 1) : (kk - 1) / (2 * kk - 1);
}

void MatrixFamily::set(const Face& face, SupportMatrix m) {
  if (!std::is_sorted(m.index.begin(), m.index.end()) ||
      std::adjacent_find(m.index.begin(), m.index.end()) != m.index.end()) {
    throw InvalidFamily("matrix index must be strictly increasing");
  }
  if (m.values.rows() != static_cast<Eigen::Index>(m.index.size()) ||
      m.values.cols() != m.values.rows()) {
    throw InvalidFamily("matrix shape does not match its index");
  }
  if (m.values.size() > 0 && (m.values - m.values.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw InvalidFamily("family matrices must be symmetric");
  }
  entries_[face] = std::move(m);
}

const SupportMatrix* MatrixFamily::find(const Face& face) const {
  auto it = entries_.find(face);
  return it == entries_.end() ? nullptr : &it->second;
}

const SupportMatrix& MatrixFamily::at(const Face& face) const {
  const SupportMatrix* m = find(face);
  if (!m) throw InvalidFamily("family has no matrix for a face of codimension >= 2");
  return *m;
}

LinkData link_data(const WeightedComplex& X, const Face& tau) {
  LocalWalk walk = local_walk(X, tau);
  LinkData out;
  out.support = walk.support;
  const auto m = static_cast<Eigen::Index>(out.support.size());
  out.P.resize(m, m);
  out.pi.resize(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    out.pi(a) = walk.stationary(out.support[a]);
    for (Eigen::Index b = 0; b < m; ++b) out.P(a, b) = walk.transition(out.support[a], out.support[b]);
  }
  return out;
}

BaseVerdict verify_base(const WeightedComplex& X, const Face& tau, const SupportMatrix& M,
                        double tol) {
  if (X.codim(tau) != 2) throw InvalidInput("base case needs codimension 2");
  LinkData link = link_data(X, tau);
  const Eigen::MatrixXd Mt = M.embed(link.support);
  const Eigen::MatrixXd Pi = link.Pi();
  const Eigen::MatrixXd lower = sym(Pi * link.P) - 2.0 * link.pi * link.pi.transpose();
  BaseVerdict v;
  v.lower_margin = psd_margin(lower, Mt);
  v.upper_margin = psd_margin(Mt, Pi / 5.0);
  v.lower_ok = v.lower_margin >= -tol;
  v.upper_ok = v.upper_margin >= -tol;
  return v;
}

RecursiveVerdict verify_recursive(const WeightedComplex& X, const Face& tau,
                                  const MatrixFamily& family, double tol) {
  const int k = X.codim(tau);
  if (k < 3) throw InvalidInput("recursive condition needs codimension at least 3");
  LinkData link = link_data(X, tau);
  const Eigen::MatrixXd Mt = family.at(tau).embed(link.support);
  const Eigen::MatrixXd Pi = link.Pi();
  const auto m = static_cast<Eigen::Index>(link.support.size());
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    expected += link.pi(a) * family.at(tau.with(link.support[a])).embed(link.support);
  }
  const double alpha = static_cast<double>(k - 1) / (k - 2);
  const Eigen::MatrixXd rhs = sym(Mt - alpha * Mt * pi_inverse(link.pi) * Mt);
  RecursiveVerdict v;
  v.threshold_margin = psd_margin(Mt, threshold_constant(family.variant(), k) * Pi);
  v.recursion_margin = psd_margin(sym(expected), rhs);
  v.threshold_ok = v.threshold_margin >= -tol;
  v.recursion_ok = v.recursion_margin >= -tol;
  return v;
}

ProductVerdict verify_product(const WeightedComplex& X, const Face& tau, const MatrixFamily& family,
                              double tol) {
  if (X.components(tau).size() < 2) {
    throw InvalidInput("link of {" + X.key(tau) + "} is not a product");
  }
  const int k = X.codim(tau);
  std::vector<int> support = X.support(tau);
  const Eigen::MatrixXd Mt = family.at(tau).embed(support);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(Mt.rows(), Mt.cols());
  ProductVerdict v;
  for (const auto& comp : component_completions(X, tau)) {
    const double d = static_cast<double>(comp.elements.size()) - 1;
    const double scale = d * (d + 1) / (static_cast<double>(k) * (k - 1));
    const SupportMatrix& first = family.at(comp.faces.front());
    for (std::size_t j = 1; j < comp.faces.size(); ++j) {
      const SupportMatrix& other = family.at(comp.faces[j]);
      if (other.index != first.index) {
        v.max_error = std::numeric_limits<double>::infinity();
        continue;
      }
      if (first.values.size() > 0) {
        v.max_error = std::max(v.max_error,
                               scale * (other.values - first.values).cwiseAbs().maxCoeff());
      }
    }
    expected += scale * first.embed(support);
  }
  if (Mt.size() > 0) v.max_error = std::max(v.max_error, (Mt - expected).cwiseAbs().maxCoeff());
  v.ok = v.max_error <= tol;
  return v;
}

TrickleStepVerdict trickle_step(const WeightedComplex& X, const Face& tau,
                                const std::map<int, SupportMatrix>& children,
                                const SupportMatrix& M, double alpha, double tol) {
  TrickleStepVerdict v;
  LinkData link = link_data(X, tau);
  v.lambda2 = link_lambda2(link);
  v.connected = v.lambda2 < 1.0 - kConnectivityTol;
  v.alpha_ok = alpha >= 0.5;
  const Eigen::MatrixXd Mt = M.embed(link.support);
  const Eigen::MatrixXd Pi = link.Pi();
  const auto m = static_cast<Eigen::Index>(link.support.size());
  v.children_lower_ok = true;
  v.children_upper_ok = true;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const int x = link.support[a];
    auto it = children.find(x);
    if (it == children.end()) throw InvalidFamily("trickle step is missing a child matrix");
    const Face child = tau.with(x);
    expected += link.pi(a) * it->second.embed(link.support);
    if (X.codim(child) < 2) continue;
    LinkData sub = link_data(X, child);
    const Eigen::MatrixXd Mx = it->second.embed(sub.support);
    const Eigen::MatrixXd lower = sym(sub.Pi() * sub.P) - alpha * sub.pi * sub.pi.transpose();
    v.children_lower_ok = v.children_lower_ok && psd_leq(lower, Mx, tol);
    v.children_upper_ok = v.children_upper_ok && psd_leq(Mx, sub.Pi() / (2 * alpha + 1), tol);
  }
  v.upper_ok = psd_leq(Mt, Pi / (2 * alpha), tol);
  v.recursion_ok = psd_leq(sym(expected), sym(Mt - alpha * Mt * pi_inverse(link.pi) * Mt), tol);
  const Eigen::MatrixXd lhs = sym(Pi * link.P) - (2.0 - 1.0 / alpha) * link.pi * link.pi.transpose();
  v.conclusion_ok = psd_leq(lhs, Mt, tol);
  v.rho = rho_on(link, Mt);
  return v;
}

CertificateReport certify(const WeightedComplex& X, const MatrixFamily& family) {
  const int n = X.element_count();
  CertificateReport report;
  report.variant = family.variant();
  report.dimension = X.dimension();
  X.face_count();
  std::vector<Face> faces;
  for (int k = 2; k <= n; ++k) {
    auto level = X.faces_of_codim(k);
    faces.insert(faces.end(), level.begin(), level.end());
  }
  std::vector<FaceVerdict> verdicts(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) {
    const Face& tau = faces[i];
    FaceVerdict& v = verdicts[i];
    v.key = X.key(tau);
    v.codim = X.codim(tau);
    LinkData link = link_data(X, tau);
    v.lambda2 = link_lambda2(link);
    if (!(v.lambda2 < 1.0 - kConnectivityTol)) return;
    v.rho = rho_on(link, family.at(tau).embed(link.support));
    const bool product = X.components(tau).size() >= 2;
    const bool product_allowed = family.variant() == Variant::kFull;
    if (v.codim == 2 && (!product || !product_allowed)) {
      v.base_ok = verify_base(X, tau, family.at(tau)).ok();
      v.passed = *v.base_ok;
      return;
    }
    if (v.codim >= 3) {
      RecursiveVerdict r = verify_recursive(X, tau, family);
      v.threshold_ok = r.threshold_ok;
      v.recursive_ok = r.recursion_ok;
      v.passed = r.ok();
    }
    if (product && product_allowed) {
      v.product_ok = verify_product(X, tau, family).ok;
      v.passed = v.passed || *v.product_ok;
    }
  });
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (!(verdicts[i].lambda2 < 1.0 - kConnectivityTol)) {
      throw PreconditionViolation("complex is not totally connected: local walk at {" +
                                  verdicts[i].key + "} is disconnected");
    }
  }
  // Faces are ordered by increasing codimension, so children come first.
  std::unordered_map<Face, bool, FaceHash> certified;
  report.mu.assign(std::max(0, n - 1), -std::numeric_limits<double>::infinity());
  report.gamma.assign(std::max(0, n - 1), -std::numeric_limits<double>::infinity());
  report.overall_pass = true;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    FaceVerdict& v = verdicts[i];
    bool ok = v.passed;
    for (int x : X.support(faces[i])) {
      auto it = certified.find(faces[i].with(x));
      if (it != certified.end()) ok = ok && it->second;
    }
    v.certified = ok;
    certified[faces[i]] = ok;
    v.sound = !ok || v.lambda2 <= v.rho + kSoundnessTol;
    if (!v.sound) ++report.soundness_violations;
    report.overall_pass = report.overall_pass && v.passed;
    const int slot = n - v.codim;
    report.mu[slot] = std::max(report.mu[slot], v.rho);
    report.gamma[slot] = std::max(report.gamma[slot], v.lambda2);
  }
  report.down_up_bound = down_up_gap_bound(report.dimension, report.mu);
  report.faces = std::move(verdicts);
  return report;
}

}  // namespace hdxcolor
