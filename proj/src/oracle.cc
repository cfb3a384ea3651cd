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


#include "chanbound/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace chanbound {

namespace {

// Pure state from 2d - 2 hyperspherical coordinates: d - 1 magnitude angles
// followed by d - 1 phases relative to the first amplitude.
ComplexVector state_from_angles(const std::vector<double>& x, int d) {
  ComplexVector c(d);
  double s = 1.0;
  for (int i = 0; i < d; ++i) {
    const double mag = i < d - 1 ? s * std::cos(x[i]) : s;
    if (i < d - 1) s *= std::sin(x[i]);
    c(i) = i == 0 ? Complex(mag, 0.0) : std::polar(mag, x[d - 1 + i - 1]);
  }
  return c;
}

// (sum over Kraus operators K) (K (x) I)|phi><phi|(K (x) I)^dagger, scaled.
void add_output(ComplexMatrix& out, const KrausChannel& ch, const ComplexMatrix& phi, double scale) {
  for (const auto& k : ch.kraus()) {
    const ComplexMatrix kt = (k * phi).transpose();
    const Eigen::Map<const ComplexVector> v(kt.data(), kt.size());
    out.noalias() += scale * (v * v.adjoint());
  }
}

ComplexMatrix output(const KrausChannel& ch, const ComplexMatrix& phi, double scale = 1.0) {
  const int dim = ch.dim_out() * static_cast<int>(phi.cols());
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  add_output(out, ch, phi, scale);
  return out;
}

double hermitian_trace_norm(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

// Maximizes objective(phi) over pure states of A (x) R, where phi is passed
// as the dim_a x dim_r coefficient matrix.
double climb(int dim_a, int dim_r, const std::function<double(const ComplexMatrix&)>& objective, bool maximize,
             const SearchConfig& cfg) {
  cfg.validate();
  const int d = dim_a * dim_r;
  const int params = 2 * d - 2;
  const double sign = maximize ? 1.0 : -1.0;
  auto score = [&](const std::vector<double>& x) {
    const ComplexVector c = state_from_angles(x, d);
    // Row-major reshape: amplitude index a * dim_r + r.
    const ComplexMatrix phi = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        c.data(), dim_a, dim_r);
    return sign * objective(phi);
  };
  if (params == 0) return sign * score({});

  double best = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x(params);
    for (int i = 0; i < d - 1; ++i) x[i] = angle(rng);
    for (int i = d - 1; i < params; ++i) x[i] = phase(rng);
    double fx = score(x);
    std::vector<double> trial(params);
    for (int step = 0; step < cfg.steps; ++step) {
      double norm = 0.0;
      for (int i = 0; i < params; ++i) {
        trial[i] = gauss(rng);
        norm += trial[i] * trial[i];
      }
      const double scale = cfg.step_size(step) / std::sqrt(norm);
      for (int i = 0; i < params; ++i) trial[i] = x[i] + scale * trial[i];
      const double ft = score(trial);
      if (ft > fx) {
        fx = ft;
        x.swap(trial);
      }
    }
    best = std::max(best, fx);
  }
  return sign * best;
}

void require_same_spaces(const KrausChannel& a, const KrausChannel& b, const char* what) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw std::invalid_argument(std::string(what) + ": channels act on different spaces");
  }
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("SearchConfig: need at least one restart");
  if (steps < 0 || halve_every < 1 || !(initial_step > 0.0)) {
    throw std::invalid_argument("SearchConfig: invalid step schedule");
  }
}

double SearchConfig::step_size(int step) const { return initial_step * std::ldexp(1.0, -(step / halve_every)); }

double max_weighted_trace_norm_search(const KrausChannel& ch0, const KrausChannel& ch1, double alpha,
                                      const SearchConfig& cfg) {
  require_same_spaces(ch0, ch1, "max_weighted_trace_norm_search");
  const int d = ch0.dim_in();
  return climb(
      d, d,
      [&](const ComplexMatrix& phi) {
        ComplexMatrix out = output(ch0, phi);
        add_output(out, ch1, phi, -alpha);
        return hermitian_trace_norm(out);
      },
      true, cfg);
}

double max_avg_weighted_trace_norm_search(const std::vector<std::pair<double, KrausChannel>>& oracles,
                                          const KrausChannel& reference, double alpha, WeightedSide side,
                                          const SearchConfig& cfg) {
  if (oracles.empty()) throw std::invalid_argument("max_avg_weighted_trace_norm_search: no oracles");
  for (const auto& [p, o] : oracles) require_same_spaces(o, reference, "max_avg_weighted_trace_norm_search");
  const int d = reference.dim_in();
  const double oracle_scale = side == WeightedSide::kOracleMinusRef ? 1.0 : alpha;
  const double ref_scale = side == WeightedSide::kOracleMinusRef ? alpha : 1.0;
  return climb(
      d, d,
      [&](const ComplexMatrix& phi) {
        const ComplexMatrix ref = output(reference, phi, ref_scale);
        double total = 0.0;
        for (const auto& [p, o] : oracles) {
          if (p == 0.0) continue;
          ComplexMatrix diff = -ref;
          add_output(diff, o, phi, oracle_scale);
          total += p * 0.5 * hermitian_trace_norm(diff);
        }
        return total;
      },
      true, cfg);
}

double min_avg_fidelity_search(const std::vector<std::pair<double, KrausChannel>>& oracles,
                               const KrausChannel& reference, const SearchConfig& cfg) {
  if (oracles.empty()) throw std::invalid_argument("min_avg_fidelity_search: no oracles");
  for (const auto& [p, o] : oracles) require_same_spaces(o, reference, "min_avg_fidelity_search");
  const int d = reference.dim_in();
  return climb(
      d, d,
      [&](const ComplexMatrix& phi) {
        const ComplexMatrix ref = output(reference, phi);
        double total = 0.0;
        for (const auto& [p, o] : oracles) {
          if (p == 0.0) continue;
          total += p * fidelity_psd(output(o, phi), ref);
        }
        return total;
      },
      false, cfg);
}

double exhaustive_small_check(const DiscriminationProblem& problem, int n, const SearchConfig& cfg) {
  if (problem.size() != 2) throw std::invalid_argument("exhaustive_small_check: two channels required");
  const auto& groups = problem.groups();
  if (groups.size() != 2 || groups[0] != std::vector<int>{0} || groups[1] != std::vector<int>{1}) {
    throw std::invalid_argument("exhaustive_small_check: singleton groups {0}, {1} required");
  }
  if (n < 0 || n > 2) throw std::invalid_argument("exhaustive_small_check: only n <= 2 is supported");
  const double p0 = problem.prior(0);
  const double p1 = problem.prior(1);
  if (n == 0) return std::min(p0, p1);
  KrausChannel ch0 = problem.channel(0);
  KrausChannel ch1 = problem.channel(1);
  if (n == 2) {
    ch0 = channel_tensor(ch0, ch0);
    ch1 = channel_tensor(ch1, ch1);
  }
  const int d = ch0.dim_in();
  const double best = climb(
      d, d,
      [&](const ComplexMatrix& phi) {
        ComplexMatrix out = output(ch0, phi, p0);
        add_output(out, ch1, phi, -p1);
        return hermitian_trace_norm(out);
      },
      true, cfg);
  return std::clamp(0.5 * (1.0 - best), 0.0, 1.0);
}

}  // namespace chanbound
