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


#ifndef CHANBOUND_OPTIMIZER_H_
#define CHANBOUND_OPTIMIZER_H_

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "chanbound/applications.h"
#include "chanbound/bounds.h"
#include "chanbound/sdp_core.h"

namespace chanbound {

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for a maximum of f on [lo, hi], stopping once the
/// bracket is narrower than tol. Returns the best point evaluated. Throws
/// std::runtime_error if f returns a non-finite value.
GoldenSectionResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol);

/// The two weighted norms entering a weighted trace-distance bound, as
/// functions of their weights. Both must be reentrant; a program failure is
/// reported by throwing.
struct WeightedNorms {
  std::function<double(double)> first;   // weight alpha0
  std::function<double(double)> second;  // weight alpha1
};

/// Thread-safe memo of a deterministic scalar function, keyed by the exact
/// argument. Copies share the memo.
class MemoizedFunction {
 public:
  explicit MemoizedFunction(std::function<double(double)> f);
  double operator()(double x) const;
  size_t size() const;

 private:
  struct State {
    std::function<double(double)> f;
    std::mutex mutex;
    std::map<double, double> values;
  };
  std::shared_ptr<State> state_;
};

/// Norm functions for the two damping channels, memoized.
WeightedNorms two_adc_norms(const TwoAdcInstance& inst, const SdpRunOptions& options = {});
/// Norm functions for a generic pair: ||ch0 - a ch1|| and ||a ch0 - ch1||, memoized.
WeightedNorms channel_pair_norms(const KrausChannel& ch0, const KrausChannel& ch1,
                                 const SdpRunOptions& options = {});
/// Half weighted norms of position finding via the single-line reduction, memoized.
WeightedNorms cpf_norms(const CpfInstance& inst, const SdpRunOptions& options = {});
/// Averaged half weighted norms of a problem against a reference channel, memoized.
WeightedNorms reference_norms(const DiscriminationProblem& problem, const KrausChannel& reference,
                              const SdpRunOptions& options = {});

struct OptimizerOptions {
  double alpha_min = 1e-6;
  double alpha_max = 2.0;
  double tolerance = 1e-6;
  int prescan_points = 16;
  /// Smallest k tried (warm start from a previous sweep point).
  int k_min = 0;
  /// When set, only this k is tried.
  std::optional<int> fixed_k;
  /// Worker threads over k candidates; results do not depend on it.
  int jobs = 1;
  bool record_trace = false;
};

struct TracePoint {
  int k = 0;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double value = 0.0;
};

struct CandidateResult {
  int k = 0;
  bool ok = false;
  double value = 0.0;  // unclamped objective at the best weights
  double alpha0 = 1.0;
  double alpha1 = 1.0;
  std::string note;
};

struct OptimizationReport {
  double best_value = 0.0;
  int k = 0;
  double alpha0 = 1.0;
  double alpha1 = 1.0;
  long evaluations = 0;
  BoundResult bound;  // re-evaluated at the best parameters
  std::vector<CandidateResult> candidates;
  std::vector<TracePoint> trace;
  std::vector<std::string> warnings;
};

/// Maximizes the two-channel weighted trace-distance bound over k and alpha0,
/// with alpha1 fixed by p0 alpha0^k = p1 alpha1^(n-k).
OptimizationReport optimize_theorem4(double p0, double p1, const WeightedNorms& norms, int n,
                                     const OptimizerOptions& options = {});
OptimizationReport optimize_theorem4(const TwoAdcInstance& inst, int n, const OptimizerOptions& options = {});

/// Maximizes the group weighted-norm bound (m = 0) over k and alpha0, with
/// alpha1 fixed by alpha0^(n-k) = alpha1^k.
OptimizationReport optimize_theorem2(double p_err_zero_value, const WeightedNorms& norms, int n,
                                     const OptimizerOptions& options = {});
OptimizationReport optimize_theorem2(const DiscriminationProblem& problem, const KrausChannel& reference, int n,
                                     const OptimizerOptions& options = {});

}  // namespace chanbound

#endif  // CHANBOUND_OPTIMIZER_H_
