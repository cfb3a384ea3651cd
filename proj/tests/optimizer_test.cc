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

#include "chanbound/optimizer.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <limits>

#include "chanbound/applications.h"

namespace chanbound {
namespace {

TEST(GoldenSection, Parabola) {
  const GoldenSectionResult r = golden_section_max([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-6);
  EXPECT_NEAR(r.x, 0.3, 1e-6);
  EXPECT_GT(r.evaluations, 10);
}

TEST(GoldenSection, MonotoneGoesToEndpoint) {
  EXPECT_NEAR(golden_section_max([](double x) { return x; }, 0.0, 1.0, 1e-6).x, 1.0, 1e-6);
  EXPECT_NEAR(golden_section_max([](double x) { return -x; }, 0.0, 1.0, 1e-6).x, 0.0, 1e-6);
}

TEST(GoldenSection, Errors) {
  EXPECT_THROW(golden_section_max([](double) { return 0.0; }, 1.0, 0.0, 1e-6), std::invalid_argument);
  EXPECT_THROW(golden_section_max([](double) { return 0.0; }, 0.0, 1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(golden_section_max([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0, 1e-3),
               std::runtime_error);
}

TEST(Memoized, CallsOncePerArgument) {
  auto calls = std::make_shared<std::atomic<int>>(0);
  MemoizedFunction f([calls](double x) {
    ++*calls;
    return 2 * x;
  });
  EXPECT_EQ(f(1.5), 3.0);
  EXPECT_EQ(f(1.5), 3.0);
  MemoizedFunction copy = f;  // copies share the cache
  EXPECT_EQ(copy(1.5), 3.0);
  EXPECT_EQ(f(2.0), 4.0);
  EXPECT_EQ(calls->load(), 2);
  EXPECT_EQ(f.size(), 2u);
}

TEST(PairWeightedOptimizer, ZeroQueries) {
  const OptimizationReport r = optimize_theorem4(TwoAdcInstance{0.5, 0.5, 0.1, 0.11}, 0);
  EXPECT_EQ(r.k, 0);
  EXPECT_NEAR(r.bound.value, 0.5, 1e-15);
  // Unequal priors admit no weights at n = 0.
  const OptimizationReport skew = optimize_theorem4(TwoAdcInstance{0.3, 0.7, 0.1, 0.11}, 0);
  EXPECT_FALSE(skew.bound.applicable);
  EXPECT_EQ(skew.bound.value, 0.0);
}

TEST(PairWeightedOptimizer, IdenticalChannels) {
  for (int n : {1, 4, 7}) {
    const OptimizationReport r = optimize_theorem4(TwoAdcInstance{0.5, 0.5, 0.2, 0.2}, n);
    EXPECT_NEAR(r.bound.value, 0.5, 1e-6) << "n=" << n;
    for (const auto& c : r.candidates) EXPECT_NEAR(c.value, 0.5, 1e-6);
  }
}

// Two-channel weighted objective for the two-damping instance at fixed k and alpha0.
double objective(const WeightedNorms& norms, int n, int k, double a0) {
  const double a1 = std::pow(std::pow(a0, k), 1.0 / (n - k));
  return 0.5 * (1.0 - 0.5 * geometric_sum(a0, k) * norms.first(a0) - 0.5 * geometric_sum(a1, n - k) * norms.second(a1));
}

TEST(PairWeightedOptimizer, AgreesWithGridScan) {
  const WeightedNorms norms = two_adc_norms({0.5, 0.5, 0.10, 0.11});
  OptimizerOptions opts;
  opts.fixed_k = 5;
  const OptimizationReport r = optimize_theorem4(0.5, 0.5, norms, 10, opts);
  // Coarse scan over the whole bracket: one interior peak. Near alpha0 = 0 the
  // objective is flat at zero up to solver noise, so only values above 1e-3 count.
  const double lo = opts.alpha_min, hi = opts.alpha_max, step = (hi - lo) / 99.0;
  std::vector<double> coarse(100);
  for (int i = 0; i < 100; ++i) coarse[i] = objective(norms, 10, 5, lo + step * i);
  int peaks = 0, best = 0;
  for (int i = 0; i < 100; ++i) {
    if (coarse[i] > coarse[best]) best = i;
    const bool left = i == 0 || coarse[i] > coarse[i - 1];
    const bool right = i == 99 || coarse[i] > coarse[i + 1];
    peaks += left && right && coarse[i] > 1e-3;
  }
  EXPECT_EQ(peaks, 1);
  // Fine scan over the cells around the coarse maximum.
  double grid_best = coarse[best];
  const double fine_lo = lo + step * std::max(best - 1, 0);
  for (int i = 0; i < 100; ++i) grid_best = std::max(grid_best, objective(norms, 10, 5, fine_lo + 2 * step * i / 99.0));
  EXPECT_NEAR(r.best_value, grid_best, 1e-4);
  EXPECT_GE(r.best_value, grid_best - 1e-9);
}

TEST(PairWeightedOptimizer, FullSearchDominatesDenseGrid) {
  const WeightedNorms norms = two_adc_norms({0.5, 0.5, 0.10, 0.11});
  for (int n = 2; n <= 12; n += 5) {
    const OptimizationReport r = optimize_theorem4(0.5, 0.5, norms, n);
    double grid_best = -1.0;
    for (int k = 1; k < n; ++k) {
      for (int i = 0; i < 200; ++i) {
        grid_best = std::max(grid_best, objective(norms, n, k, 0.8 + 0.3 * i / 199.0));
      }
    }
    EXPECT_GE(r.best_value, grid_best - 1e-9) << "n=" << n;
  }
}

TEST(PairWeightedOptimizer, OptimalKIsNonDecreasing) {
  const WeightedNorms norms = two_adc_norms({0.5, 0.5, 0.10, 0.11});
  int previous = 0;
  for (int n = 1; n <= 18; ++n) {
    const OptimizationReport r = optimize_theorem4(0.5, 0.5, norms, n);
    EXPECT_GE(r.k, previous) << "n=" << n;
    previous = r.k;
  }
}

TEST(PairWeightedOptimizer, WarmStartRestrictsRange) {
  const WeightedNorms norms = two_adc_norms({0.5, 0.5, 0.10, 0.11});
  OptimizerOptions opts;
  opts.k_min = 3;
  const OptimizationReport r = optimize_theorem4(0.5, 0.5, norms, 8, opts);
  EXPECT_GE(r.k, 3);
  ASSERT_FALSE(r.candidates.empty());
  EXPECT_EQ(r.candidates.front().k, 3);
}

TEST(PairWeightedOptimizer, JobsDoNotChangeTheResult) {
  const WeightedNorms norms = two_adc_norms({0.5, 0.5, 0.10, 0.11});
  OptimizerOptions serial;
  OptimizerOptions parallel;
  parallel.jobs = 3;
  const OptimizationReport a = optimize_theorem4(0.5, 0.5, norms, 9, serial);
  const OptimizationReport b = optimize_theorem4(0.5, 0.5, two_adc_norms({0.5, 0.5, 0.10, 0.11}), 9, parallel);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(a.alpha0, b.alpha0);
}

TEST(PairWeightedOptimizer, ReportsTrace) {
  OptimizerOptions opts;
  opts.record_trace = true;
  const OptimizationReport r = optimize_theorem4(TwoAdcInstance{0.5, 0.5, 0.1, 0.2}, 3, opts);
  EXPECT_EQ(static_cast<long>(r.trace.size()), r.evaluations);
}

TEST(PairWeightedOptimizer, RejectsBadOptions) {
  const WeightedNorms norms = two_adc_norms({0.5, 0.5, 0.10, 0.11});
  OptimizerOptions opts;
  opts.alpha_min = 0.0;
  EXPECT_THROW(optimize_theorem4(0.5, 0.5, norms, 3, opts), std::invalid_argument);
  OptimizerOptions k_out;
  k_out.fixed_k = 5;
  EXPECT_THROW(optimize_theorem4(0.5, 0.5, norms, 3, k_out), std::invalid_argument);
  EXPECT_THROW(optimize_theorem4(0.5, 0.6, norms, 3), std::invalid_argument);
}

TEST(PairWeightedOptimizer, SolverFailureSurfaces) {
  WeightedNorms failing{[](double) -> double { throw SolverFailure("forced"); },
                        [](double) -> double { throw SolverFailure("forced"); }};
  EXPECT_THROW(optimize_theorem4(0.5, 0.5, failing, 3), SolverFailure);
}

TEST(ReferenceWeightedOptimizer, ZeroQueriesAndIdenticalOracles) {
  const OptimizationReport zero = optimize_theorem2(2.0 / 3.0, cpf_norms({3, 0.1, 0.11}), 0);
  EXPECT_NEAR(zero.bound.value, 2.0 / 3.0, 1e-15);
  const OptimizationReport same = optimize_theorem2(2.0 / 3.0, cpf_norms({3, 0.2, 0.2}), 6);
  EXPECT_NEAR(same.bound.value, 2.0 / 3.0, 1e-6);
}

TEST(ReferenceWeightedOptimizer, ProblemOverloadMatchesReduction) {
  const CpfInstance inst{2, 0.10, 0.2};
  const OptimizationReport direct = optimize_theorem2(cpf_problem(inst), cpf_reference(inst), 3);
  const OptimizationReport reduced = optimize_theorem2(0.5, cpf_norms(inst), 3);
  EXPECT_NEAR(direct.bound.value, reduced.bound.value, 1e-5);
  EXPECT_EQ(direct.k, reduced.k);
}

}  // namespace
}  // namespace chanbound
