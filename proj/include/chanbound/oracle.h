// Copyright 2026 The chanbound Authors
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


#ifndef CHANBOUND_ORACLE_H_
#define CHANBOUND_ORACLE_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "chanbound/bounds.h"
#include "chanbound/qmat.h"
#include "chanbound/sdp_core.h"

namespace chanbound {

/// Random-restart hill climbing over pure input states of A (x) R with
/// dim R = dim A. Each restart starts from a random state and proposes
/// random moves whose length halves on a fixed schedule.
struct SearchConfig {
  int restarts = 64;
  int steps = 2000;
  double initial_step = 0.3;
  int halve_every = 200;
  std::uint64_t seed = 0;

  void validate() const;
  double step_size(int step) const;
};

/// Lower estimate of ||ch0 - alpha ch1||_diamond.
double max_weighted_trace_norm_search(const KrausChannel& ch0, const KrausChannel& ch1, double alpha,
                                      const SearchConfig& cfg = {});

/// Lower estimate of max over inputs of sum_xi p_xi (1/2)||(O^xi - alpha Psi)(phi)||_1,
/// or with alpha O^xi - Psi depending on `side`.
double max_avg_weighted_trace_norm_search(const std::vector<std::pair<double, KrausChannel>>& oracles,
                                          const KrausChannel& reference, double alpha, WeightedSide side,
                                          const SearchConfig& cfg = {});

/// Upper estimate of min over inputs of sum_xi p_xi F(O^xi(phi), Psi(phi)).
double min_avg_fidelity_search(const std::vector<std::pair<double, KrausChannel>>& oracles,
                               const KrausChannel& reference, const SearchConfig& cfg = {});

/// Error probability of a two-channel problem with singleton groups: the
/// prior minimum at n = 0, the optimal one-shot error at n = 1 and the best
/// parallel two-query strategy found at n = 2. Larger n, other group
/// structures and more than two channels are rejected.
double exhaustive_small_check(const DiscriminationProblem& problem, int n, const SearchConfig& cfg = {});

}  // namespace chanbound

#endif  // CHANBOUND_ORACLE_H_
