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


#ifndef CHANBOUND_APPLICATIONS_H_
#define CHANBOUND_APPLICATIONS_H_

#include <vector>

#include "chanbound/bounds.h"
#include "chanbound/qmat.h"
#include "chanbound/sdp_core.h"

namespace chanbound {

/// Search among N items for an unknown set of k marked ones.
struct GroverInstance {
  int N = 4;
  int k = 1;
  void validate() const;  // 1 <= k <= N / 2
};

/// Find which of ell qubit lines carries damping rate r1; the others carry r0.
struct CpfInstance {
  int ell = 3;
  double r0 = 0.10;
  double r1 = 0.11;
  void validate() const;
};

/// Two amplitude-damping channels with priors p0 and p1.
struct TwoAdcInstance {
  double p0 = 0.5;
  double p1 = 0.5;
  double r0 = 0.10;
  double r1 = 0.11;
  void validate() const;
};

/// Qubit amplitude damping with decay probability r.
KrausChannel adc_channel(double r);

/// arccos(sqrt(r0 r1) + sqrt((1 - r0)(1 - r1))).
double bhattacharyya_angle(double r0, double r1);

/// Phase oracle I - 2 sum_{u in marked} |u><u| as a channel.
KrausChannel grover_oracle_channel(int N, const std::vector<int>& marked);

/// All k-subsets as oracles with uniform priors and one group per item.
/// The oracle count is binomial(N, k); throws beyond 5000 oracles.
DiscriminationProblem grover_problem(const GroverInstance& inst);

BoundResult grover_bound(const GroverInstance& inst, int n);

/// Success probability of n Grover iterations; throws std::domain_error
/// beyond the region where the rotation stays within pi/2.
double grover_success(const GroverInstance& inst, int n);

/// The ell-line oracles with uniform priors, each line damped independently.
DiscriminationProblem cpf_problem(const CpfInstance& inst);

/// All ell lines damped at r0.
KrausChannel cpf_reference(const CpfInstance& inst);

/// (1/2)||E^{r1} - alpha E^{r0}||_diamond, bound-safe.
double cpf_theta0(const CpfInstance& inst, double alpha, const SdpRunOptions& options = {});
/// (1/2)||alpha E^{r1} - E^{r0}||_diamond, bound-safe.
double cpf_theta1(const CpfInstance& inst, double alpha, const SdpRunOptions& options = {});

/// Weighted-norm bound for position finding with no intermediate m, using the
/// single-line reduction of the ell-line norms.
BoundResult cpf_bound(const CpfInstance& inst, int n, int k, double alpha0, double alpha1,
                      const SdpRunOptions& options = {});

/// Bures-angle bound with the closed-form angle. With check_sdp set, the angle
/// is also computed by min_trace_norm_sdp and a disagreement beyond 1e-6
/// raises std::runtime_error.
BoundResult two_adc_bures_bound(const TwoAdcInstance& inst, int n, bool check_sdp = false);

/// arccos of min_trace_norm_sdp on the two damping isometries, bound-safe.
double two_adc_tau_a_sdp(const TwoAdcInstance& inst, const SdpRunOptions& options = {});

/// ||E^{r0} - alpha E^{r1}||_diamond, bound-safe.
double two_adc_tau0(const TwoAdcInstance& inst, double alpha, const SdpRunOptions& options = {});
/// ||alpha E^{r0} - E^{r1}||_diamond, bound-safe.
double two_adc_tau1(const TwoAdcInstance& inst, double alpha, const SdpRunOptions& options = {});

/// Weighted trace-distance bound for the two damping channels.
BoundResult two_adc_trace_bound(const TwoAdcInstance& inst, int n, int k, double alpha0, double alpha1,
                                const SdpRunOptions& options = {});

}  // namespace chanbound

#endif  // CHANBOUND_APPLICATIONS_H_
