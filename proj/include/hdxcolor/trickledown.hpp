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

#ifndef HDXCOLOR_TRICKLEDOWN_HPP_
#define HDXCOLOR_TRICKLEDOWN_HPP_

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdxcolor/complex.hpp"

namespace hdxcolor {

// kInductive: M <= (k-1)/(2k-1) Pi, no product escape.
// kFull: M <= (k-1)/(3k-1) Pi, with the product branch.
enum class Variant { kInductive, kFull };

const char* to_string(Variant v);
Variant parse_variant(const std::string& text);
double threshold_constant(Variant v, int k);

class MatrixFamily {
 public:
  explicit MatrixFamily(Variant variant = Variant::kFull) : variant_(variant) {}

  Variant variant() const { return variant_; }
  // Throws InvalidFamily on asymmetric or unsorted input.
  void set(const Face& face, SupportMatrix m);
  const SupportMatrix* find(const Face& face) const;
  // Throws InvalidFamily if absent.
  const SupportMatrix& at(const Face& face) const;
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<Face, SupportMatrix, FaceHash>& entries() const { return entries_; }

 private:
  Variant variant_;
  std::unordered_map<Face, SupportMatrix, FaceHash> entries_;
};

// Local walk data restricted to the support of pi_tau.
struct LinkData {
  std::vector<int> support;
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;

  Eigen::MatrixXd Pi() const { return pi.asDiagonal(); }
};
LinkData link_data(const WeightedComplex& X, const Face& tau);

struct BaseVerdict {
  bool lower_ok = false;  // Pi P - 2 pi pi^T <= M
  bool upper_ok = false;  // M <= Pi / 5
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  bool ok() const { return lower_ok && upper_ok; }
};

struct RecursiveVerdict {
  bool threshold_ok = false;  // M <= c_k Pi
  bool recursion_ok = false;  // E_x M_{tau+x} <= M - (k-1)/(k-2) M Pi^{-1} M
  double threshold_margin = 0.0;
  double recursion_margin = 0.0;
  bool ok() const { return threshold_ok && recursion_ok; }
};

struct ProductVerdict {
  bool ok = false;
  double max_error = 0.0;
};

BaseVerdict verify_base(const WeightedComplex& X, const Face& tau, const SupportMatrix& M,
                        double tol = 1e-9);
RecursiveVerdict verify_recursive(const WeightedComplex& X, const Face& tau,
                                  const MatrixFamily& family, double tol = 1e-9);
ProductVerdict verify_product(const WeightedComplex& X, const Face& tau, const MatrixFamily& family,
                              double tol = 1e-10);

struct TrickleStepVerdict {
  bool connected = false;
  bool alpha_ok = false;
  bool children_lower_ok = false;  // Pi_x P_x - alpha pi_x pi_x^T <= M_x
  bool children_upper_ok = false;  // M_x <= Pi_x / (2 alpha + 1)
  bool upper_ok = false;           // M <= Pi / (2 alpha)
  bool recursion_ok = false;       // E_x M_x <= M - alpha M Pi^{-1} M
  bool conclusion_ok = false;      // Pi P - (2 - 1/alpha) pi pi^T <= M
  double lambda2 = 0.0;
  double rho = 0.0;
  bool preconditions_ok() const {
    return connected && alpha_ok && children_lower_ok && children_upper_ok && upper_ok &&
           recursion_ok;
  }
};

// `children` maps each x in the support of tau to M_{tau+x}.
TrickleStepVerdict trickle_step(const WeightedComplex& X, const Face& tau,
                                const std::map<int, SupportMatrix>& children,
                                const SupportMatrix& M, double alpha, double tol = 1e-9);

struct FaceVerdict {
  std::string key;
  int codim = 0;
  double lambda2 = 0.0;
  double rho = 0.0;
  std::optional<bool> base_ok;
  std::optional<bool> threshold_ok;
  std::optional<bool> recursive_ok;
  std::optional<bool> product_ok;
  bool passed = false;
  // The face and every face above it passed.
  bool certified = false;
  // certified implies lambda2 <= rho + 1e-8.
  bool sound = true;

  friend bool operator==(const FaceVerdict&, const FaceVerdict&) = default;
};

struct CertificateReport {
  Variant variant = Variant::kFull;
  int dimension = 0;
  std::vector<FaceVerdict> faces;  // increasing codimension, then face order
  // Indexed by level + 1 for levels -1 .. d-2.
  std::vector<double> mu;
  std::vector<double> gamma;
  double down_up_bound = 0.0;  // local-to-global bound from mu
  bool overall_pass = false;
  int soundness_violations = 0;

  bool soundness_ok() const { return soundness_violations == 0; }
  friend bool operator==(const CertificateReport&, const CertificateReport&) = default;
};

inline constexpr double kSoundnessTol = 1e-8;

// Throws PreconditionViolation if some local walk of codimension >= 2 is
// disconnected.
CertificateReport certify(const WeightedComplex& X, const MatrixFamily& family);

}  // namespace hdxcolor

#endif  // HDXCOLOR_TRICKLEDOWN_HPP_
