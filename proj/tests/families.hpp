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

// Scalar-multiple families M_tau = mu_k Pi_tau used across the tests.

#ifndef HDXCOLOR_TESTS_FAMILIES_HPP_
#define HDXCOLOR_TESTS_FAMILIES_HPP_

#include <cmath>
#include <vector>

#include "hdxcolor/complex.hpp"
#include "hdxcolor/spectral.hpp"
#include "hdxcolor/trickledown.hpp"

namespace fixtures {

using namespace hdxcolor;

// mu[k] for k = 2 .. n: mu_2 is the largest codim-2 lambda2, then
// mu_k = (1 - sqrt(1 - 4 a mu_{k-1})) / (2 a) with a = (k-1)/(k-2).
inline std::vector<double> vanilla_mu(const WeightedComplex& X) {
  const int n = X.element_count();
  std::vector<double> mu(n + 1, 0.0);
  for (const Face& f : X.faces_of_codim(2)) {
    if (X.components(f).size() == 1) mu[2] = std::max(mu[2], lambda2(local_walk(X, f)));
  }
  for (int k = 3; k <= n; ++k) {
    const double a = (k - 1.0) / (k - 2.0);
    const double disc = 1.0 - 4.0 * a * mu[k - 1];
    mu[k] = disc >= 0 ? (1.0 - std::sqrt(disc)) / (2.0 * a) : 1.0;
  }
  return mu;
}

// Connected faces get mu_k Pi_tau times `scale`; disconnected faces the
// product combination of the component faces.
inline MatrixFamily vanilla_family(const WeightedComplex& X, const std::vector<double>& mu,
                                   double scale = 1.0, Variant variant = Variant::kFull) {
  MatrixFamily family(variant);
  for (int k = 2; k <= X.element_count(); ++k) {
    for (const Face& tau : X.faces_of_codim(k)) {
      const std::vector<int> s = X.support(tau);
      SupportMatrix M = SupportMatrix::zero(s);
      if (X.components(tau).size() == 1) {
        const LocalWalk w = local_walk(X, tau);
        for (std::size_t a = 0; a < s.size(); ++a) M.values(a, a) = scale * mu[k] * w.stationary(s[a]);
      } else {
        for (const auto& comp : component_completions(X, tau)) {
          const double d = static_cast<double>(comp.elements.size()) - 1;
          const double c = d * (d + 1) / (static_cast<double>(k) * (k - 1));
          M.values += c * family.at(comp.faces.front()).embed(s);
        }
      }
      family.set(tau, std::move(M));
    }
  }
  return family;
}

}  // namespace fixtures

#endif  // HDXCOLOR_TESTS_FAMILIES_HPP_
