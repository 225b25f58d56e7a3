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

#include "hdxcolor/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdxcolor/errors.hpp"
#include "hdxcolor/parallel.hpp"
#include "hdxcolor/spectral.hpp"

namespace hdxcolor {

StepOutcome glauber_step(ChainState& state, const ListColoringInstance& inst, Rng& rng) {
  StepOutcome out;
  std::uniform_int_distribution<int> pick(0, inst.element_count() - 1);
  out.element = pick(rng);
  out.previous = state.coloring.at(out.element);
  std::vector<int> available;
  for (int c : inst.list(out.element)) {
    bool used = false;
    for (int y : inst.conflict_graph().neighbors(out.element)) used = used || state.coloring[y] == c;
    if (!used) available.push_back(c);
  }
  // The current color is always available in a proper state.
  std::uniform_int_distribution<std::size_t> choose(0, available.size() - 1);
  out.color = available[choose(rng)];
  out.frozen = available.size() == 1;
  state.coloring[out.element] = out.color;
  ++state.steps;
  if (out.color != out.previous) ++state.changes;
  if (out.frozen) ++state.frozen;
  return out;
}

std::vector<int> greedy_coloring(const ListColoringInstance& inst) {
  std::vector<int> coloring(inst.element_count(), 0);
  for (int x = 0; x < inst.element_count(); ++x) {
    for (int c : inst.list(x)) {
      bool used = false;
      for (int y : inst.conflict_graph().neighbors(x)) used = used || coloring[y] == c;
      if (!used) {
        coloring[x] = c;
        break;
      }
    }
    if (coloring[x] == 0) {
      throw InitializationFailure("greedy initialization failed at element " + std::to_string(x) +
                                  "; try larger lists");
    }
  }
  return coloring;
}

ChainResult run_chain(const ListColoringInstance& inst, long long steps, std::uint64_t seed) {
  ChainResult result;
  result.seed = seed;
  result.initial = greedy_coloring(inst);
  result.state.coloring = result.initial;
  Rng rng(seed);
  for (long long t = 0; t < steps; ++t) glauber_step(result.state, inst, rng);
  return result;
}

std::vector<ChainResult> run_chains(const ListColoringInstance& inst, long long steps,
                                    const std::vector<std::uint64_t>& seeds) {
  std::vector<ChainResult> out(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) { out[i] = run_chain(inst, steps, seeds[i]); });
  return out;
}

int facet_of(const WeightedComplex& X, const std::vector<int>& coloring) {
  if (static_cast<int>(coloring.size()) != X.element_count()) return -1;
  std::vector<GroundPair> pairs;
  for (int e = 0; e < X.element_count(); ++e) {
    if (X.ground_index(e, coloring[e]) < 0) return -1;
    pairs.push_back({e, coloring[e]});
  }
  const Face f = X.face_from(pairs);
  const auto& facets = X.facets();
  auto it = std::find(facets.begin(), facets.end(), f);
  return it == facets.end() ? -1 : static_cast<int>(it - facets.begin());
}

namespace {

double down_up_lambda2(const WeightedComplex& X, const Eigen::SparseMatrix<double, Eigen::RowMajor>& P,
                       const Eigen::VectorXd& pi) {
  return X.facets().size() > 1 ? lambda2_reversible(Eigen::MatrixXd(P), pi) : 0.0;
}

Eigen::VectorXd facet_distribution(const WeightedComplex& X) {
  const int N = static_cast<int>(X.facets().size());
  Eigen::VectorXd pi(N);
  for (int f = 0; f < N; ++f) pi(f) = X.facet_weights()[f];
  return pi / pi.sum();
}

}  // namespace

SpectrumReport exact_spectrum(const ListColoringInstance& inst, long long facet_limit) {
  const WeightedComplex X =
      build_complex(inst, std::min<long long>(facet_limit, kDenseFacetLimit));
  SpectrumReport report;
  report.facets = static_cast<int>(X.facets().size());
  report.lambda2 = down_up_lambda2(X, down_up_walk(X), facet_distribution(X));
  report.gap = 1.0 - report.lambda2;
  report.ergodic = report.gap > 1e-9;
  report.profile = local_profile(X);
  report.local_bound = down_up_gap_bound(report.profile);
  report.local_bound_corrected = down_up_gap_bound_corrected(report.profile);
  return report;
}

MixingReport exact_mixing(const ListColoringInstance& inst, long long facet_limit, int horizon) {
  if (horizon < 0) throw InvalidInput("horizon must be non-negative");
  const WeightedComplex X =
      build_complex(inst, std::min<long long>(facet_limit, kDenseFacetLimit));
  MixingReport report;
  report.facets = static_cast<int>(X.facets().size());
  report.dimension = X.dimension();
  const Eigen::SparseMatrix<double, Eigen::RowMajor> P = down_up_walk(X);
  const int N = report.facets;
  const Eigen::VectorXd pi = facet_distribution(X);
  report.stationary_deviation = (P.transpose() * pi - pi).cwiseAbs().maxCoeff();
  report.lambda2 = down_up_lambda2(X, P, pi);
  report.gap = 1.0 - report.lambda2;
  report.ergodic = report.gap > 1e-9;

  const SpectralProfile profile = local_profile(X);
  report.gamma = profile.gamma;
  report.local_bound = down_up_gap_bound(profile);
  report.local_bound_corrected = down_up_gap_bound_corrected(profile);

  // Rows are start facets.
  Eigen::MatrixXd dist = Eigen::MatrixXd::Identity(N, N);
  std::vector<Eigen::VectorXd> tv(horizon + 1);
  for (int t = 0; t <= horizon; ++t) {
    if (t > 0) dist = dist * P;
    tv[t] = 0.5 * (dist.rowwise() - pi.transpose()).cwiseAbs().rowwise().sum();
  }
  Eigen::Index worst = 0;
  tv[horizon].maxCoeff(&worst);
  report.worst_start = X.key(X.facets()[worst]);
  report.tv.resize(horizon + 1);
  for (int t = 0; t <= horizon; ++t) report.tv[t] = tv[t](worst);
  if (!report.ergodic) {
    report.t_mix_unbounded = true;
  } else {
    for (int t = 0; t <= horizon; ++t) {
      if (tv[t].maxCoeff() <= 0.25) {
        report.t_mix = t;
        break;
      }
    }
  }
  return report;
}

}  // namespace hdxcolor
