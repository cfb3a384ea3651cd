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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace chanbound {

namespace {

enum class Family { kTheorem2, kTheorem4 };

constexpr double kHopeless = -1.0;


// Objective and weight coupling of one family at fixed n.
struct Objective {
  Family family;
  int n;
  double p0;  // first prior (two-channel form) or p_err(0) (reference form)
  double p1;
  const WeightedNorms* norms;

  // Terms in the two geometric sums for a given k.
  int first_terms(int k) const { return family == Family::kTheorem4 ? k : n - k; }
  int second_terms(int k) const { return family == Family::kTheorem4 ? n - k : k; }

  // Upper estimate of raw() from ||A - a B||_diamond >= |1 - a| for channels A, B.
  double estimate(int k, double a0, double a1) const {
    const double scale = family == Family::kTheorem4 ? 1.0 : 0.5;
    const double v0 = geometric_sum(a0, first_terms(k)) * scale * std::abs(1.0 - a0);
    const double v1 = geometric_sum(a1, second_terms(k)) * scale * std::abs(1.0 - a1);
    if (family == Family::kTheorem4) return 0.5 * (1.0 - p0 * v0 - p1 * v1);
    return p0 - v0 - v1;
  }

  // Weights this poor skip the programs: the estimate already rules them out.
  bool hopeless(int k, double a0, double a1) const { return estimate(k, a0, a1) < kHopeless; }

  double raw(int k, double a0, double a1) const {
    if (hopeless(k, a0, a1)) return estimate(k, a0, a1);
    const int t0 = first_terms(k);
    const int t1 = second_terms(k);
    const double v0 = t0 > 0 ? geometric_sum(a0, t0) * norms->first(a0) : 0.0;
    const double v1 = t1 > 0 ? geometric_sum(a1, t1) * norms->second(a1) : 0.0;
    if (family == Family::kTheorem4) return 0.5 * (1.0 - p0 * v0 - p1 * v1);
    return p0 - v0 - v1;
  }

  BoundResult bound(int k, double a0, double a1) const {
    if (hopeless(k, a0, a1)) {
      BoundResult r;
      r.kind = family == Family::kTheorem4 ? BoundKind::kTheorem4 : BoundKind::kTheorem2;
      r.params = {0, k, a0, a1, {}};
      r.applicable = true;
      r.value = 0.0;
      r.diagnostics.push_back("weights leave only the trivial bound");
      return r;
    }
    const double v0 = first_terms(k) > 0 ? norms->first(a0) : 0.0;
    const double v1 = second_terms(k) > 0 ? norms->second(a1) : 0.0;
    if (family == Family::kTheorem4) return theorem4_bound(n, k, p0, p1, a0, a1, v0, v1);
    return theorem2_bound(n, 0, k, a0, a1, v0, v1, p0);
  }
};

// How alpha1 follows from alpha0 at a given k, or fixed weights for the edge cases.
struct Coupling {
  bool valid = true;
  bool fixed = false;
  double a0 = 1.0;
  double a1 = 1.0;
  std::string note;
};

Coupling coupling_for(const Objective& obj, int k) {
  Coupling c;
  const int n = obj.n;
  if (obj.family == Family::kTheorem2) {
    // alpha0^(n-k) = alpha1^k: at k = 0 this forces alpha0 = 1, at k = n alpha1 = 1.
    if (k == 0 || k == n) c.fixed = true;
    return c;
  }
  const double p0 = obj.p0;
  const double p1 = obj.p1;
  if (n == 0) {
    c.fixed = true;
    if (std::abs(p0 - p1) > 1e-12) {
      c.valid = false;
      c.note = "no weights satisfy p0 = p1 at n = 0";
    }
    return c;
  }
  if (k == 0) {
    c.fixed = true;
    if (p1 == 0.0) {
      c.valid = false;
      c.note = "p1 = 0 leaves no weight at k = 0";
    } else {
      c.a1 = std::pow(p0 / p1, 1.0 / n);
    }
  } else if (k == n) {
    c.fixed = true;
    if (p0 == 0.0) {
      c.valid = false;
      c.note = "p0 = 0 leaves no weight at k = n";
    } else {
      c.a0 = std::pow(p1 / p0, 1.0 / n);
    }
  } else if (p1 == 0.0) {
    c.valid = false;
    c.note = "p1 = 0 leaves no weight";
  }
  return c;
}

double follow(const Objective& obj, int k, double a0) {
  const int n = obj.n;
  if (obj.family == Family::kTheorem2) return std::pow(a0, static_cast<double>(n - k) / k);
  return std::pow(obj.p0 * std::pow(a0, k) / obj.p1, 1.0 / (n - k));
}

struct CandidateRun {
  CandidateResult result;
  std::vector<TracePoint> trace;
  long evaluations = 0;
  bool solver_failure = false;
  bool edge = false;
};

CandidateRun run_candidate(const Objective& obj, int k, const OptimizerOptions& opt) {
  CandidateRun run;
  run.result.k = k;
  const Coupling c = coupling_for(obj, k);
  if (!c.valid) {
    run.result.note = c.note;
    return run;
  }
  auto evaluate = [&](double a0, double a1) {
    const double v = obj.raw(k, a0, a1);
    ++run.evaluations;
    if (opt.record_trace) run.trace.push_back({k, a0, a1, v});
    return v;
  };
  try {
    if (c.fixed) {
      run.result.alpha0 = c.a0;
      run.result.alpha1 = c.a1;
      run.result.value = evaluate(c.a0, c.a1);
      run.result.ok = true;
      return run;
    }
    auto f = [&](double a0) { return evaluate(a0, follow(obj, k, a0)); };
    const int points = std::max(3, opt.prescan_points);
    const double lo = opt.alpha_min;
    const double hi = opt.alpha_max;
    std::vector<double> xs(points), fs(points);
    for (int i = 0; i < points; ++i) {
      xs[i] = i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1);
      fs[i] = f(xs[i]);
      if (!std::isfinite(fs[i])) throw std::runtime_error("non-finite objective");
    }
    int best_i = static_cast<int>(std::max_element(fs.begin(), fs.end()) - fs.begin());
    double best_x = xs[best_i];
    double best_f = fs[best_i];
    for (int i = 0; i < points; ++i) {
      const bool rises = i == 0 || fs[i] > fs[i - 1];
      const bool falls = i == points - 1 || fs[i] >= fs[i + 1];
      if (!rises || !falls) continue;
      const double a = xs[std::max(0, i - 1)];
      const double b = xs[std::min(points - 1, i + 1)];
      const GoldenSectionResult g = golden_section_max(f, a, b, opt.tolerance);
      if (g.value > best_f) {
        best_f = g.value;
        best_x = g.x;
      }
    }
    run.result.alpha0 = best_x;
    run.result.alpha1 = follow(obj, k, best_x);
    run.result.value = best_f;
    run.result.ok = true;
    run.edge = best_x - lo <= opt.tolerance || hi - best_x <= opt.tolerance;
  } catch (const SolverFailure& e) {
    run.solver_failure = true;
    run.result.note = e.what();
  }
  return run;
}

OptimizationReport optimize(const Objective& obj, const OptimizerOptions& opt) {
  const int n = obj.n;
  if (n < 0) throw std::invalid_argument("optimizer: negative query count");
  if (!(opt.alpha_min > 0.0) || !(opt.alpha_max > opt.alpha_min) || !(opt.tolerance > 0.0)) {
    throw std::invalid_argument("optimizer: invalid weight bracket or tolerance");
  }
  std::vector<int> ks;
  if (opt.fixed_k) {
    if (*opt.fixed_k < 0 || *opt.fixed_k > n) throw std::invalid_argument("optimizer: fixed k out of range");
    ks.push_back(*opt.fixed_k);
  } else {
    for (int k = std::clamp(opt.k_min, 0, n); k <= n; ++k) ks.push_back(k);
  }

  std::vector<CandidateRun> runs(ks.size());
  auto process = [&](size_t i) { runs[i] = run_candidate(obj, ks[i], opt); };
  const int workers = std::clamp(opt.jobs, 1, static_cast<int>(ks.size()));
  if (workers == 1) {
    for (size_t i = 0; i < ks.size(); ++i) process(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < ks.size(); i = next++) process(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  OptimizationReport report;
  int best = -1;
  bool any_failure = false;
  for (size_t i = 0; i < runs.size(); ++i) {
    auto& run = runs[i];
    report.evaluations += run.evaluations;
    report.trace.insert(report.trace.end(), run.trace.begin(), run.trace.end());
    if (run.solver_failure) {
      any_failure = true;
      report.warnings.push_back("k=" + std::to_string(run.result.k) + " skipped: " + run.result.note);
    }
    if (run.result.ok && (best < 0 || run.result.value > runs[best].result.value)) best = static_cast<int>(i);
    report.candidates.push_back(run.result);
  }
  if (best < 0) {
    if (any_failure) throw SolverFailure("optimizer: every candidate k failed in the solver");
    report.bound.kind = obj.family == Family::kTheorem4 ? BoundKind::kTheorem4 : BoundKind::kTheorem2;
    report.bound.applicable = false;
    report.bound.value = 0.0;
    for (const auto& c : report.candidates) report.bound.diagnostics.push_back(c.note);
    return report;
  }
  const CandidateResult& winner = runs[best].result;
  if (runs[best].edge) {
    report.warnings.push_back("optimal alpha0 " + std::to_string(winner.alpha0) + " lies on the search bracket edge");
  }
  report.k = winner.k;
  report.alpha0 = winner.alpha0;
  report.alpha1 = winner.alpha1;
  report.bound = obj.bound(winner.k, winner.alpha0, winner.alpha1);
  report.bound.diagnostics.insert(report.bound.diagnostics.end(), report.warnings.begin(), report.warnings.end());
  report.best_value = report.bound.value;
  return report;
}

}  // namespace

GoldenSectionResult golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_max: need lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section_max: tolerance must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  GoldenSectionResult best;
  bool first = true;
  auto eval = [&](double x) {
    const double v = f(x);
    ++best.evaluations;
    if (!std::isfinite(v)) {
      throw std::runtime_error("golden_section_max: non-finite objective at x = " + std::to_string(x));
    }
    if (first || v > best.value) {
      best.x = x;
      best.value = v;
      first = false;
    }
    return v;
  };
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  return best;
}

MemoizedFunction::MemoizedFunction(std::function<double(double)> f) : state_(std::make_shared<State>()) {
  state_->f = std::move(f);
}

double MemoizedFunction::operator()(double x) const {
  {
    std::lock_guard<std::mutex> lock(state_->mutex);
    auto it = state_->values.find(x);
    if (it != state_->values.end()) return it->second;
  }
  const double v = state_->f(x);
  std::lock_guard<std::mutex> lock(state_->mutex);
  state_->values.emplace(x, v);
  return v;
}

size_t MemoizedFunction::size() const {
  std::lock_guard<std::mutex> lock(state_->mutex);
  return state_->values.size();
}

WeightedNorms two_adc_norms(const TwoAdcInstance& inst, const SdpRunOptions& options) {
  inst.validate();
  return {MemoizedFunction([inst, options](double a) { return two_adc_tau0(inst, a, options); }),
          MemoizedFunction([inst, options](double a) { return two_adc_tau1(inst, a, options); })};
}

WeightedNorms channel_pair_norms(const KrausChannel& ch0, const KrausChannel& ch1, const SdpRunOptions& options) {
  return {MemoizedFunction([ch0, ch1, options](double a) {
            return certified_value(weighted_diamond_norm_sdp(ch0, ch1, a, options), "first weighted norm");
          }),
          MemoizedFunction([ch0, ch1, options](double a) {
            return certified_value(weighted_diamond_norm_sdp(ch1, ch0, a, options), "second weighted norm");
          })};
}

WeightedNorms cpf_norms(const CpfInstance& inst, const SdpRunOptions& options) {
  inst.validate();
  return {MemoizedFunction([inst, options](double a) { return cpf_theta0(inst, a, options); }),
          MemoizedFunction([inst, options](double a) { return cpf_theta1(inst, a, options); })};
}

WeightedNorms reference_norms(const DiscriminationProblem& problem, const KrausChannel& reference,
                              const SdpRunOptions& options) {
  const auto oracles = problem.oracles();
  return {MemoizedFunction([oracles, reference, options](double a) {
            return certified_value(
                avg_weighted_diamond_sdp(oracles, reference, a, WeightedSide::kOracleMinusRef, options), "theta0");
          }),
          MemoizedFunction([oracles, reference, options](double a) {
            return certified_value(
                avg_weighted_diamond_sdp(oracles, reference, a, WeightedSide::kRefMinusOracle, options), "theta1");
          })};
}

OptimizationReport optimize_theorem4(double p0, double p1, const WeightedNorms& norms, int n,
                                     const OptimizerOptions& options) {
  if (!(p0 >= 0.0) || !(p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > 1e-12) {
    throw std::invalid_argument("optimize_theorem4: priors must be non-negative and sum to 1");
  }
  return optimize({Family::kTheorem4, n, p0, p1, &norms}, options);
}

OptimizationReport optimize_theorem4(const TwoAdcInstance& inst, int n, const OptimizerOptions& options) {
  const WeightedNorms norms = two_adc_norms(inst);
  return optimize_theorem4(inst.p0, inst.p1, norms, n, options);
}

OptimizationReport optimize_theorem2(double p_err_zero_value, const WeightedNorms& norms, int n,
                                     const OptimizerOptions& options) {
  if (!(p_err_zero_value >= 0.0 && p_err_zero_value <= 1.0)) {
    throw std::invalid_argument("optimize_theorem2: p_err(0) must lie in [0, 1]");
  }
  return optimize({Family::kTheorem2, n, p_err_zero_value, 0.0, &norms}, options);
}

OptimizationReport optimize_theorem2(const DiscriminationProblem& problem, const KrausChannel& reference, int n,
                                     const OptimizerOptions& options) {
  const WeightedNorms norms = reference_norms(problem, reference);
  OptimizationReport r = optimize_theorem2(p_err_zero(problem), norms, n, options);
  r.bound.params.reference = "reference";
  return r;
}

}  // namespace chanbound
