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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hdxcolor/errors.hpp"
#include "hdxcolor/spectral.hpp"
#include "oracles.hpp"

using namespace hdxcolor;

namespace {

WeightedComplex p2(int q) {
  const std::vector<Edge> e = {{0, 1}};
  return build_complex(ListColoringInstance::uniform(ElementKind::kVertex, Graph::from_edges(2, e), q));
}

}  // namespace

TEST_CASE("P2 local walk at the empty face") {
  WeightedComplex X = p2(3);
  // Rows of K_{3,3} minus a perfect matching, halved.
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(6, 6);
  for (int c = 0; c < 3; ++c) {
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c != c2) P(c, 3 + c2) = P(3 + c2, c) = 0.5;
    }
  }
  const Eigen::VectorXd pi = Eigen::VectorXd::Constant(6, 1.0 / 6);
  CHECK(lambda2_reversible(P, pi) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lambda2(local_walk(X, Face())) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("lambda2 matches a general eigensolve on random reversible chains") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    Eigen::MatrixXd W(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) W(i, j) = W(j, i) = u(rng);
    }
    Eigen::VectorXd deg = W.rowwise().sum();
    Eigen::MatrixXd P = deg.cwiseInverse().asDiagonal() * W;
    Eigen::VectorXd pi = deg / deg.sum();
    Eigen::EigenSolver<Eigen::MatrixXd> es(P);
    std::vector<double> ev;
    for (int i = 0; i < n; ++i) ev.push_back(es.eigenvalues()(i).real());
    std::sort(ev.begin(), ev.end());
    CHECK(lambda2_reversible(P, pi) == doctest::Approx(ev[n - 2]).epsilon(1e-9));
  }
}

TEST_CASE("lambda2 edge cases") {
  Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 1);
  CHECK(lambda2_reversible(one, Eigen::VectorXd::Ones(1)) == -std::numeric_limits<double>::infinity());
  Eigen::MatrixXd P(2, 2);
  P << 0.5, 0.5, 0.1, 0.9;
  CHECK_THROWS_AS(lambda2_reversible(P, Eigen::VectorXd::Constant(2, 0.5)), InvalidInput);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(2, 2);
  CHECK(lambda2_reversible(Q, Eigen::VectorXd::Constant(2, 0.5)) == doctest::Approx(1.0));
}

TEST_CASE("psd order") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd B = 2 * A;
  CHECK(psd_leq(A, B));
  CHECK_FALSE(psd_leq(B, A));
  CHECK(psd_leq(A, A + Eigen::MatrixXd::Identity(3, 3) * -1e-12));
  CHECK(psd_margin(A, B) == doctest::Approx(1.0));
  CHECK(psd_margin(A, 4 * A) == doctest::Approx(1.0));
  CHECK(psd_margin(B, A) == doctest::Approx(-1.0));
  const Eigen::VectorXd ev = symmetric_eigenvalues(Eigen::Vector3d(3, 1, 2).asDiagonal());
  CHECK(ev(0) == 1.0);
  CHECK(ev(2) == 3.0);
}

TEST_CASE("spectral radius by similarity") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    Eigen::VectorXd pi(n);
    for (int i = 0; i < n; ++i) pi(i) = u(rng);
    Eigen::MatrixXd M = oracle::random_symmetric(rng, n);
    Eigen::MatrixXd T = pi.cwiseInverse().asDiagonal() * M;
    Eigen::EigenSolver<Eigen::MatrixXd> es(T);
    const double rho = es.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(spectral_radius_similarity(pi, M) == doctest::Approx(rho).epsilon(1e-9));
  }
  Eigen::VectorXd pi(2);
  pi << 1.0, 0.0;
  CHECK_THROWS_AS(spectral_radius_similarity(pi, Eigen::MatrixXd::Ones(2, 2)), InvalidInput);
}

TEST_CASE("profile and local-to-global bound") {
  SpectralProfile p = local_profile(p2(3));
  REQUIRE(p.gamma.size() == 1);
  CHECK(p.level(-1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(down_up_gap_bound(p) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(down_up_gap_bound(2, {-0.5, 0.5}) == doctest::Approx(0.25));
  CHECK(down_up_gap_bound(2, {1.0, 0.5}) == 0.0);
  CHECK(down_up_gap_bound(0, {}) == 1.0);
}

TEST_CASE("profile levels are maxima over faces") {
  const std::vector<Edge> e = {{0, 1}, {1, 2}};
  WeightedComplex X =
      build_complex(ListColoringInstance::uniform(ElementKind::kVertex, Graph::from_edges(3, e), 4));
  SpectralProfile p = local_profile(X);
  REQUIRE(p.gamma.size() == 2);
  double level0 = -1;
  for (const Face& f : X.faces_of_codim(2)) {
    level0 = std::max(level0, oracle::lambda2_dense(oracle::local_walk(X, f)));
  }
  CHECK(p.level(0) == doctest::Approx(level0).epsilon(1e-12));
  CHECK(p.face_lambda2.at("") ==
        doctest::Approx(oracle::lambda2_dense(oracle::local_walk(X, Face()))).epsilon(1e-12));
}

TEST_CASE("row-sum bound") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
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
    CHECK(psd_leq(A, norm * I));
  }
}

TEST_CASE("half minus square root inverts M(I - M)") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 5;
    Eigen::MatrixXd M = oracle::random_symmetric(rng, n);
    const double top = symmetric_eigenvalues(M).maxCoeff();
    if (top > 0.5) M -= (top - 0.5 + 0.01) * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd T = M * (Eigen::MatrixXd::Identity(n, n) - M);
    CHECK(oracle::max_abs(half_minus_sqrt_map(T) - M) < 1e-9);
  }
}

TEST_CASE("monotone lemma rejects violated hypotheses") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd B = 0.1 * A;
  CHECK_THROWS_AS(monotone_lemma_check(A, B, 1.0), PreconditionViolation);
  CHECK(monotone_lemma_check(B, 0.2 * A, 1.0));
}
