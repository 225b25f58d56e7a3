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

#include "hdxcolor/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdxcolor/errors.hpp"
#include "hdxcolor/parallel.hpp"

namespace hdxcolor {
namespace {

constexpr double kReversibilityTol = 1e-9;
constexpr double kAsymmetryTol = 1e-10;

double inf_norm(const Eigen::MatrixXd& A) {
  if (A.size() == 0) return 0.0;
  return A.cwiseAbs().rowwise().sum().maxCoeff();
}

Eigen::MatrixXd restrict(const Eigen::MatrixXd& A, const std::vector<int>& idx) {
  Eigen::MatrixXd out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = A(idx[a], idx[b]);
  }
  return out;
}

}  // namespace

std::vector<int> support_of(const Eigen::VectorXd& pi) {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < pi.size(); ++i) {
    if (pi(i) > kSupportThreshold) out.push_back(static_cast<int>(i));
  }
  return out;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A) {
  if (A.rows() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double lambda2_reversible(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi) {
  if (P.rows() != P.cols() || P.rows() != pi.size()) throw InvalidInput("shape mismatch");
  std::vector<int> supp = support_of(pi);
  if (supp.empty()) throw InvalidInput("stationary vector has empty support");
  if (supp.size() == 1) return -std::numeric_limits<double>::infinity();
  const auto m = static_cast<Eigen::Index>(supp.size());
  Eigen::MatrixXd S(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      const int x = supp[a], y = supp[b];
      const double flow_xy = pi(x) * P(x, y), flow_yx = pi(y) * P(y, x);
      if (std::abs(flow_xy - flow_yx) > kReversibilityTol) {
        throw InvalidInput("chain is not reversible with respect to the given distribution");
      }
      S(a, b) = std::sqrt(pi(x)) * P(x, y) / std::sqrt(pi(y));
    }
  }
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::VectorXd ev = symmetric_eigenvalues(S);
  return ev(m - 2);
}

double lambda2(const LocalWalk& walk) { return lambda2_reversible(walk.transition, walk.stationary); }

double psd_margin(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols()) {
    throw InvalidInput("psd comparison needs square matrices of equal size");
  }
  if (A.rows() == 0) return 0.0;
  Eigen::MatrixXd D = B - A;
  const double scale = std::max(1.0, inf_norm(D));
  const double asym = std::max((A - A.transpose()).cwiseAbs().maxCoeff(),
                               (B - B.transpose()).cwiseAbs().maxCoeff());
  if (asym > kAsymmetryTol * std::max({1.0, inf_norm(A), inf_norm(B)})) {
    throw InvalidInput("psd comparison of non-symmetric matrices");
  }
  D = 0.5 * (D + D.transpose()).eval();
  return symmetric_eigenvalues(D)(0) / scale;
}

bool psd_leq(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double tol) {
  return psd_margin(A, B) >= -tol;
}

double spectral_radius_similarity(const Eigen::VectorXd& pi, const Eigen::MatrixXd& M) {
  if (M.rows() != pi.size() || M.cols() != pi.size()) throw InvalidInput("shape mismatch");
  std::vector<int> supp = support_of(pi);
  std::vector<bool> inside(pi.size(), false);
  for (int i : supp) inside[i] = true;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if ((!inside[i] || !inside[j]) && M(i, j) != 0.0) {
        throw InvalidInput("matrix is nonzero outside the support of pi");
      }
    }
  }
  if (supp.empty()) return 0.0;
  Eigen::MatrixXd S = restrict(M, supp);
  for (std::size_t a = 0; a < supp.size(); ++a) {
    for (std::size_t b = 0; b < supp.size(); ++b) {
      S(a, b) /= std::sqrt(pi(supp[a]) * pi(supp[b]));
    }
  }
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::VectorXd ev = symmetric_eigenvalues(S);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

SpectralProfile local_profile(const WeightedComplex& X) {
  SpectralProfile profile;
  profile.dimension = X.dimension();
  const int n = X.element_count();
  profile.gamma.assign(std::max(0, n - 1), -std::numeric_limits<double>::infinity());
  X.face_count();
  std::vector<Face> faces;
  for (int k = 2; k <= n; ++k) {
    auto level = X.faces_of_codim(k);
    faces.insert(faces.end(), level.begin(), level.end());
  }
  std::vector<double> values(faces.size());
  parallel_for(faces.size(), [&](std::size_t i) { values[i] = lambda2(local_walk(X, faces[i])); });
  for (std::size_t i = 0; i < faces.size(); ++i) {
    profile.face_lambda2[X.key(faces[i])] = values[i];
    double& g = profile.gamma[n - X.codim(faces[i])];
    g = std::max(g, values[i]);
  }
  return profile;
}

double down_up_gap_bound(int dimension, const std::vector<double>& gamma) {
  if (dimension <= 0) return 1.0;
  double bound = 1.0 / dimension;
  for (double g : gamma) {
    if (g >= 1.0) return 0.0;
    bound *= 1.0 - std::max(g, 0.0);
  }
  return bound;
}

double down_up_gap_bound(const SpectralProfile& profile) {
  return down_up_gap_bound(profile.dimension, profile.gamma);
}

double down_up_gap_bound_corrected(int dimension, const std::vector<double>& gamma) {
  if (dimension <= 0) return 1.0;
  return down_up_gap_bound(dimension, gamma) * dimension / (dimension + 1.0);
}

double down_up_gap_bound_corrected(const SpectralProfile& profile) {
  return down_up_gap_bound_corrected(profile.dimension, profile.gamma);
}

bool monotone_lemma_check(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double alpha,
                          double tol) {
  if (!(alpha > 0.0)) throw PreconditionViolation("alpha must be positive");
  const auto n = A.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd cap = I / (2.0 * alpha);
  if (!psd_leq(A, cap, tol) || !psd_leq(B, cap, tol)) {
    throw PreconditionViolation("A and B must both be below I/(2 alpha)");
  }
  const Eigen::MatrixXd lhs = A * (I - alpha * A);
  const Eigen::MatrixXd rhs = B * (I - alpha * B);
  if (!psd_leq(0.5 * (lhs + lhs.transpose()), 0.5 * (rhs + rhs.transpose()), tol)) {
    throw PreconditionViolation("A(I - alpha A) <= B(I - alpha B) does not hold");
  }
  return psd_leq(A, B, tol);
}

Eigen::MatrixXd half_minus_sqrt_map(const Eigen::MatrixXd& T) {
  const auto n = T.rows();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd R = 0.25 * I - 0.5 * (T + T.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(R);
  Eigen::VectorXd ev = solver.eigenvalues();
  if (n > 0 && ev(0) < -1e-12) throw PreconditionViolation("T must be below I/4");
  Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  return 0.5 * I - solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace hdxcolor
