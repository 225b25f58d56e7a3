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

#ifndef HDXCOLOR_SAMPLER_HPP_
#define HDXCOLOR_SAMPLER_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hdxcolor/complex.hpp"
#include "hdxcolor/graphs.hpp"
#include "hdxcolor/spectral.hpp"

namespace hdxcolor {

using Rng = std::mt19937_64;

struct ChainState {
  std::vector<int> coloring;  // element -> color
  long long steps = 0;
  long long changes = 0;
  long long frozen = 0;  // steps with a single available color
};

struct StepOutcome {
  int element = -1;
  int previous = 0;
  int color = 0;
  bool frozen = false;
};

// Resamples a uniform element uniformly among list colors unused by its
// neighbors.
StepOutcome glauber_step(ChainState& state, const ListColoringInstance& inst, Rng& rng);

// First-fit coloring in element order; throws InitializationFailure.
std::vector<int> greedy_coloring(const ListColoringInstance& inst);

struct ChainResult {
  std::uint64_t seed = 0;
  std::vector<int> initial;
  ChainState state;
};

ChainResult run_chain(const ListColoringInstance& inst, long long steps, std::uint64_t seed);
// Independent chains, one per seed, run in parallel.
std::vector<ChainResult> run_chains(const ListColoringInstance& inst, long long steps,
                                    const std::vector<std::uint64_t>& seeds);

// The facet of X for a full coloring, or -1.
int facet_of(const WeightedComplex& X, const std::vector<int>& coloring);

inline constexpr int kDenseFacetLimit = 3000;

struct MixingReport {
  int facets = 0;
  int dimension = 0;
  double lambda2 = 0.0;
  double gap = 0.0;
  bool ergodic = false;
  std::vector<double> gamma;  // local profile, levels -1 .. d-2
  double local_bound = 0.0;   // (1/d) prod (1 - gamma_j)
  double local_bound_corrected = 0.0;  // (1/(d+1)) prod (1 - gamma_j)
  double stationary_deviation = 0.0;
  std::string worst_start;  // facet key
  std::vector<double> tv;   // tv[t] from the worst start, t = 0 .. horizon
  std::optional<int> t_mix;  // unset: not reached within the horizon
  bool t_mix_unbounded = false;

  friend bool operator==(const MixingReport&, const MixingReport&) = default;
};

struct SpectrumReport {
  int facets = 0;
  SpectralProfile profile;
  double lambda2 = 0.0;  // of the down-up walk
  double gap = 0.0;
  bool ergodic = false;
  double local_bound = 0.0;
  double local_bound_corrected = 0.0;

  friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

// Local profile plus the exact down-up gap.
SpectrumReport exact_spectrum(const ListColoringInstance& inst, long long facet_limit);

// Throws ResourceLimit beyond facet_limit or kDenseFacetLimit facets.
MixingReport exact_mixing(const ListColoringInstance& inst, long long facet_limit, int horizon);

}  // namespace hdxcolor

#endif  // HDXCOLOR_SAMPLER_HPP_
