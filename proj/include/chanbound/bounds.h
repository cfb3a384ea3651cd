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


#ifndef CHANBOUND_BOUNDS_H_
#define CHANBOUND_BOUNDS_H_

#include <string>
#include <utility>
#include <vector>

#include "chanbound/qmat.h"

namespace chanbound {

/// Channels drawn with known priors, plus the groups an answer may name.
/// Guessing group eta is correct when the drawn index lies in groups[eta].
class DiscriminationProblem {
 public:
  DiscriminationProblem(std::vector<std::pair<double, KrausChannel>> oracles, std::vector<std::vector<int>> groups);

  /// One group per oracle: plain channel discrimination.
  static DiscriminationProblem singletons(std::vector<std::pair<double, KrausChannel>> oracles);

  int size() const { return static_cast<int>(oracles_.size()); }
  double prior(int i) const { return oracles_.at(i).first; }
  const KrausChannel& channel(int i) const { return oracles_.at(i).second; }
  const std::vector<std::pair<double, KrausChannel>>& oracles() const { return oracles_; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

 private:
  std::vector<std::pair<double, KrausChannel>> oracles_;
  std::vector<std::vector<int>> groups_;
};

enum class BoundKind { kTheorem1, kTheorem2, kTheorem3, kTheorem4, kCorollary1, kAnalytic };

/// Short tag: "T1", "T2", "T3", "T4", "C1" or "analytic".
const char* to_string(BoundKind kind);

struct BoundParams {
  int m = 0;
  int k = 0;
  double alpha0 = 1.0;
  double alpha1 = 1.0;
  std::string reference;  // identifier of the reference channel, if any
};

/// A lower bound on the n-query error probability. An inapplicable bound is
/// reported as the trivial value 0.
struct BoundResult {
  double value = 0.0;
  BoundKind kind = BoundKind::kAnalytic;
  BoundParams params;
  bool applicable = false;
  std::vector<std::string> diagnostics;

  /// Throws std::logic_error if value is outside [0, 1] or an inapplicable
  /// result carries a nonzero value.
  void validate() const;
};

/// Angle and norm inputs of the four theorems. Angles are in radians.
struct AngleQuantities {
  double theta_a = 0.0;   // Bures-angle quantity with a reference channel
  double theta_d0 = 0.0;  // half weighted diamond norms against the reference
  double theta_d1 = 0.0;
  double tau_a = 0.0;     // Bures-angle quantity between two channels
  double tau_d0 = 0.0;    // weighted diamond norms between two channels
  double tau_d1 = 0.0;
  double theta_m = 0.0;   // arccos sqrt(p_err(m))

  /// Throws std::invalid_argument unless angles lie in [0, pi/2] and the
  /// norm-type values are non-negative.
  void validate() const;
};

/// Error without any oracle call: the smallest prior mass outside one group.
/// Returns 1 when there are no groups.
double p_err_zero(const DiscriminationProblem& problem);

/// sum_{i < terms} alpha^i.
double geometric_sum(double alpha, int terms);

/// cos^2((n - m) theta_a + arccos sqrt(p_err_m_lb)) while the angle stays
/// within [0, pi/2].
BoundResult theorem1_bound(int n, int m, double theta_a, double p_err_m_lb);

/// p_err_m_lb - S(alpha0, n - k) theta_d0 - S(alpha1, k - m) theta_d1, where
/// S is geometric_sum and alpha0^(n-k) = alpha1^(k-m).
BoundResult theorem2_bound(int n, int m, int k, double alpha0, double alpha1, double theta_d0, double theta_d1,
                           double p_err_m_lb);

/// (1 - sqrt(1 - 4 p0 p1 cos^2(n tau_a))) / 2 while n tau_a <= pi/2.
BoundResult theorem3_bound(int n, double p0, double p1, double tau_a);

/// (1 - p0 S(alpha0, k) tau_d0 - p1 S(alpha1, n - k) tau_d1) / 2, where
/// p0 alpha0^k = p1 alpha1^(n-k).
BoundResult theorem4_bound(int n, int k, double p0, double p1, double alpha0, double alpha1, double tau_d0,
                           double tau_d1);

/// sqrt((a0 + a1)^2 - 4 a0 a1 F(rho0, rho1)^2), an upper bound on
/// ||a0 rho0 - a1 rho1||_1.
double fuchs_vdg_generalized(double a0, double a1, const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Smallest arc, measured counter-clockwise from one of the phases, that
/// covers all of them.
double covering_angle(const std::vector<double>& phases);

/// Eigenphases of U0^dagger U1 in [0, 2 pi).
std::vector<double> relative_eigenphases(const ComplexMatrix& u0, const ComplexMatrix& u1);

/// Minimum n-query error for discriminating two unitary channels.
BoundResult unitary_exact_error(int n, double p0, double p1, const ComplexMatrix& u0, const ComplexMatrix& u1);

}  // namespace chanbound

#endif  // CHANBOUND_BOUNDS_H_
