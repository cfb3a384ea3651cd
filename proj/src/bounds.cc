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


#include "chanbound/bounds.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace chanbound {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Angles this close to pi/2 count as reaching it exactly.
constexpr double kAngleSlack = 1e-12;
constexpr double kConstraintTolerance = 1e-10;
constexpr double kPriorTolerance = 1e-12;

void require_priors(double p0, double p1, const char* what) {
  if (!(p0 >= 0.0) || !(p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > kPriorTolerance) {
    throw std::invalid_argument(std::string(what) + ": priors must be non-negative and sum to 1");
  }
}

void require_weight(double alpha, const char* what) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument(std::string(what) + ": weights must be finite and non-negative");
  }
}

void require_norm(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + ": norm-type inputs must be finite and non-negative");
  }
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kConstraintTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

// (1 - sqrt(1 - x)) / 2 without cancellation for small x.
double half_one_minus_root(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x / (2.0 * (1.0 + std::sqrt(1.0 - x)));
}

BoundResult inapplicable(BoundKind kind, BoundParams params, std::string why) {
  BoundResult r;
  r.kind = kind;
  r.params = std::move(params);
  r.applicable = false;
  r.value = 0.0;
  r.diagnostics.push_back(std::move(why));
  return r;
}

}  // namespace

DiscriminationProblem::DiscriminationProblem(std::vector<std::pair<double, KrausChannel>> oracles,
                                             std::vector<std::vector<int>> groups)
    : oracles_(std::move(oracles)), groups_(std::move(groups)) {
  if (oracles_.empty()) throw std::invalid_argument("DiscriminationProblem: no oracles");
  double sum = 0.0;
  for (const auto& [p, ch] : oracles_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("DiscriminationProblem: negative prior");
    if (ch.dim_in() != oracles_[0].second.dim_in() || ch.dim_out() != oracles_[0].second.dim_out()) {
      throw std::invalid_argument("DiscriminationProblem: oracles act on different spaces");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kPriorTolerance) {
    throw std::invalid_argument("DiscriminationProblem: priors do not sum to 1");
  }
  for (const auto& g : groups_) {
    for (int i : g) {
      if (i < 0 || i >= size()) throw std::invalid_argument("DiscriminationProblem: group index out of range");
    }
  }
}

DiscriminationProblem DiscriminationProblem::singletons(std::vector<std::pair<double, KrausChannel>> oracles) {
  std::vector<std::vector<int>> groups;
  for (size_t i = 0; i < oracles.size(); ++i) groups.push_back({static_cast<int>(i)});
  return DiscriminationProblem(std::move(oracles), std::move(groups));
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kTheorem1:
      return "T1";
    case BoundKind::kTheorem2:
      return "T2";
    case BoundKind::kTheorem3:
      return "T3";
    case BoundKind::kTheorem4:
      return "T4";
    case BoundKind::kCorollary1:
      return "C1";
    case BoundKind::kAnalytic:
      return "analytic";
  }
  return "unknown";
}

void BoundResult::validate() const {
  if (!(value >= 0.0 && value <= 1.0)) throw std::logic_error("BoundResult: value outside [0, 1]");
  if (!applicable && value != 0.0) throw std::logic_error("BoundResult: inapplicable bound with nonzero value");
}

void AngleQuantities::validate() const {
  for (double a : {theta_a, tau_a, theta_m}) {
    if (!(a >= 0.0 && a <= kHalfPi + kAngleSlack)) {
      throw std::invalid_argument("AngleQuantities: angles must lie in [0, pi/2]");
    }
  }
  for (double v : {theta_d0, theta_d1, tau_d0, tau_d1}) require_norm(v, "AngleQuantities");
}

double p_err_zero(const DiscriminationProblem& problem) {
  double best = 1.0;
  for (const auto& g : problem.groups()) {
    const std::set<int> members(g.begin(), g.end());
    double outside = 0.0;
    for (int i = 0; i < problem.size(); ++i)
      if (!members.count(i)) outside += problem.prior(i);
    best = std::min(best, outside);
  }
  return std::clamp(best, 0.0, 1.0);
}

double geometric_sum(double alpha, int terms) {
  if (terms < 0) throw std::invalid_argument("geometric_sum: negative term count");
  if (terms == 0) return 0.0;
  if (std::abs(alpha - 1.0) < 1e-9) {
    double sum = 0.0;
    double power = 1.0;
    for (int i = 0; i < terms; ++i) {
      sum += power;
      power *= alpha;
    }
    return sum;
  }
  return (std::pow(alpha, terms) - 1.0) / (alpha - 1.0);
}

BoundResult theorem1_bound(int n, int m, double theta_a, double p_err_m_lb) {
  if (m < 0 || m > n) throw std::invalid_argument("theorem1_bound: need 0 <= m <= n");
  if (!(theta_a >= 0.0 && theta_a <= kHalfPi + kAngleSlack)) {
    throw std::invalid_argument("theorem1_bound: theta_a must lie in [0, pi/2]");
  }
  if (!(p_err_m_lb >= 0.0 && p_err_m_lb <= 1.0)) {
    throw std::invalid_argument("theorem1_bound: p_err(m) must lie in [0, 1]");
  }
  BoundParams params;
  params.m = m;
  const double angle = (n - m) * theta_a + std::acos(std::sqrt(p_err_m_lb));
  if (angle > kHalfPi + kAngleSlack) {
    return inapplicable(BoundKind::kTheorem1, params, "angle exceeds pi/2");
  }
  BoundResult r;
  r.kind = BoundKind::kTheorem1;
  r.params = params;
  r.applicable = true;
  if (m == n) {
    r.value = p_err_m_lb;
  } else if (angle >= kHalfPi - kAngleSlack) {
    r.value = 0.0;
  } else {
    const double c = std::cos(angle);
    r.value = std::clamp(c * c, 0.0, 1.0);
  }
  return r;
}

BoundResult theorem2_bound(int n, int m, int k, double alpha0, double alpha1, double theta_d0, double theta_d1,
                           double p_err_m_lb) {
  if (m < 0 || m > k || k > n) throw std::invalid_argument("theorem2_bound: need 0 <= m <= k <= n");
  require_weight(alpha0, "theorem2_bound");
  require_weight(alpha1, "theorem2_bound");
  require_norm(theta_d0, "theorem2_bound");
  require_norm(theta_d1, "theorem2_bound");
  if (!(p_err_m_lb >= 0.0 && p_err_m_lb <= 1.0)) {
    throw std::invalid_argument("theorem2_bound: p_err(m) must lie in [0, 1]");
  }
  if (!nearly_equal(std::pow(alpha0, n - k), std::pow(alpha1, k - m))) {
    throw std::invalid_argument("theorem2_bound: weights violate alpha0^(n-k) = alpha1^(k-m)");
  }
  BoundResult r;
  r.kind = BoundKind::kTheorem2;
  r.params = {m, k, alpha0, alpha1, {}};
  r.applicable = true;
  const double loss = geometric_sum(alpha0, n - k) * theta_d0 + geometric_sum(alpha1, k - m) * theta_d1;
  r.value = std::clamp(p_err_m_lb - loss, 0.0, 1.0);
  return r;
}

BoundResult theorem3_bound(int n, double p0, double p1, double tau_a) {
  if (n < 0) throw std::invalid_argument("theorem3_bound: negative query count");
  require_priors(p0, p1, "theorem3_bound");
  if (!(tau_a >= 0.0) || !std::isfinite(tau_a)) {
    throw std::invalid_argument("theorem3_bound: tau_a must be finite and non-negative");
  }
  const double angle = n * tau_a;
  if (angle > kHalfPi + kAngleSlack) {
    return inapplicable(BoundKind::kTheorem3, {}, "n * tau_a exceeds pi/2");
  }
  BoundResult r;
  r.kind = BoundKind::kTheorem3;
  r.applicable = true;
  if (angle >= kHalfPi - kAngleSlack) {
    r.value = 0.0;
  } else {
    const double c = std::cos(angle);
    r.value = half_one_minus_root(4.0 * p0 * p1 * c * c);
  }
  return r;
}

BoundResult theorem4_bound(int n, int k, double p0, double p1, double alpha0, double alpha1, double tau_d0,
                           double tau_d1) {
  if (k < 0 || k > n) throw std::invalid_argument("theorem4_bound: need 0 <= k <= n");
  require_priors(p0, p1, "theorem4_bound");
  require_weight(alpha0, "theorem4_bound");
  require_weight(alpha1, "theorem4_bound");
  require_norm(tau_d0, "theorem4_bound");
  require_norm(tau_d1, "theorem4_bound");
  if (!nearly_equal(p0 * std::pow(alpha0, k), p1 * std::pow(alpha1, n - k))) {
    throw std::invalid_argument("theorem4_bound: weights violate p0 alpha0^k = p1 alpha1^(n-k)");
  }
  BoundResult r;
  r.kind = BoundKind::kTheorem4;
  r.params = {0, k, alpha0, alpha1, {}};
  r.applicable = true;
  const double loss = p0 * geometric_sum(alpha0, k) * tau_d0 + p1 * geometric_sum(alpha1, n - k) * tau_d1;
  r.value = std::clamp(0.5 * (1.0 - loss), 0.0, 1.0);
  return r;
}

double fuchs_vdg_generalized(double a0, double a1, const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (!(a0 >= 0.0) || !(a1 >= 0.0)) throw std::invalid_argument("fuchs_vdg_generalized: negative weight");
  if (rho0.dim() != rho1.dim()) throw std::invalid_argument("fuchs_vdg_generalized: dimension mismatch");
  const double f = fidelity(rho0, rho1);
  return std::sqrt(std::max(0.0, (a0 + a1) * (a0 + a1) - 4.0 * a0 * a1 * f * f));
}

double covering_angle(const std::vector<double>& phases) {
  if (phases.empty()) throw std::invalid_argument("covering_angle: empty phase list");
  auto wrap = [](double x) {
    double w = std::fmod(x, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi - 1e-12) w = 0.0;
    return w;
  };
  double best = kTwoPi;
  for (double ref : phases) {
    double widest = 0.0;
    for (double other : phases) widest = std::max(widest, wrap(other - ref));
    if (widest < best) best = widest;
  }
  return best;
}

std::vector<double> relative_eigenphases(const ComplexMatrix& u0, const ComplexMatrix& u1) {
  if (u0.rows() != u1.rows() || u0.cols() != u1.cols()) {
    throw std::invalid_argument("relative_eigenphases: dimension mismatch");
  }
  if (!is_unitary(u0) || !is_unitary(u1)) throw std::invalid_argument("relative_eigenphases: input is not unitary");
  Eigen::ComplexEigenSolver<ComplexMatrix> es(u0.adjoint() * u1, false);
  std::vector<double> phases;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double a = std::arg(es.eigenvalues()(i));
    if (a < 0.0) a += kTwoPi;
    phases.push_back(a);
  }
  return phases;
}

BoundResult unitary_exact_error(int n, double p0, double p1, const ComplexMatrix& u0, const ComplexMatrix& u1) {
  if (n < 0) throw std::invalid_argument("unitary_exact_error: negative query count");
  require_priors(p0, p1, "unitary_exact_error");
  const double cover = covering_angle(relative_eigenphases(u0, u1));
  const double angle = 0.5 * n * cover;
  BoundResult r;
  r.kind = BoundKind::kCorollary1;
  r.diagnostics.push_back("covering angle " + std::to_string(cover));
  if (angle > kHalfPi + kAngleSlack) {
    r.applicable = false;
    r.value = 0.0;
    r.diagnostics.push_back("n * covering angle / 2 exceeds pi/2");
    return r;
  }
  r.applicable = true;
  if (angle >= kHalfPi - kAngleSlack) {
    r.value = 0.0;
  } else {
    const double c = std::cos(angle);
    r.value = half_one_minus_root(4.0 * p0 * p1 * c * c);
  }
  return r;
}

}  // namespace chanbound
