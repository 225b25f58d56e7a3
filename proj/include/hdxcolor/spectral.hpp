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

#ifndef HDXCOLOR_SPECTRAL_HPP_
#define HDXCOLOR_SPECTRAL_HPP_

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "hdxcolor/complex.hpp"

namespace hdxcolor {

inline constexpr double kSupportThreshold = 1e-15;
inline constexpr double kDefaultPsdTol = 1e-9;

// Indices with pi above kSupportThreshold.
std::vector<int> support_of(const Eigen::VectorXd& pi);

// Second largest eigenvalue of a chain reversible w.r.t. pi, computed on the
// support of pi. Returns -infinity for a one-state chain. Throws InvalidInput
// if detailed balance fails by more than 1e-9.
double lambda2_reversible(const Eigen::MatrixXd& P, const Eigen::VectorXd& pi);
double lambda2(const LocalWalk& walk);

// Eigenvalues of a symmetric matrix in increasing order.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A);

// A <= B in the Loewner order, with relative tolerance.
bool psd_leq(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double tol = kDefaultPsdTol);

// Smallest eigenvalue of B - A divided by max(1, ||B - A||_inf); psd_leq is
// margin >= -tol.
double psd_margin(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

// rho(Pi^{-1} M) for Pi = diag(pi). Throws InvalidInput if M is nonzero off
// the support of pi.
double spectral_radius_similarity(const Eigen::VectorXd& pi, const Eigen::MatrixXd& M);

struct SpectralProfile {
  int dimension = 0;
  // gamma[j] bounds level j - 1, i.e. faces of dimension j - 1.
  std::vector<double> gamma;
  std::map<std::string, double> face_lambda2;

  double level(int k) const { return gamma.at(k + 1); }
  friend bool operator==(const SpectralProfile&, const SpectralProfile&) = default;
};

SpectralProfile local_profile(const WeightedComplex& X);

// (1/d) prod_j (1 - gamma_j), with negative gamma_j clamped to 0 and any
// gamma_j >= 1 giving 0. A zero-dimensional complex gives 1.
double down_up_gap_bound(const SpectralProfile& profile);
double down_up_gap_bound(int dimension, const std::vector<double>& gamma);
// The same product with prefactor 1/(d+1), one over the facet size. Exact
// down-up gaps stay above this one; they can fall below the 1/d form.
double down_up_gap_bound_corrected(const SpectralProfile& profile);
double down_up_gap_bound_corrected(int dimension, const std::vector<double>& gamma);

// Returns psd_leq(A, B) after checking A, B <= I/(2 alpha) and
// A(I - alpha A) <= B(I - alpha B); throws PreconditionViolation otherwise.
bool monotone_lemma_check(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double alpha,
                          double tol = kDefaultPsdTol);

// T -> I/2 - (I/4 - T)^{1/2}; requires T <= I/4.
Eigen::MatrixXd half_minus_sqrt_map(const Eigen::MatrixXd& T);

}  // namespace hdxcolor

#endif  // HDXCOLOR_SPECTRAL_HPP_
