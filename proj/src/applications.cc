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


#include "chanbound/applications.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chanbound {

namespace {

void require_rate(double r, const char* what) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string(what) + ": damping rate must lie in [0, 1]");
}

double grover_angle(const GroverInstance& inst) {
  return std::asin(std::sqrt(static_cast<double>(inst.k) / static_cast<double>(inst.N)));
}

std::string status_note(const char* name, const ChannelSdpResult& r) {
  return std::string(name) + " " + sdp::to_string(r.status);
}

// Runs a weighted diamond-norm program and returns its bound-safe value,
// recording the solver status.
double safe_norm(const KrausChannel& a, const KrausChannel& b, double alpha, const SdpRunOptions& options,
                 const char* name, std::vector<std::string>* notes) {
  const ChannelSdpResult r = weighted_diamond_norm_sdp(a, b, alpha, options);
  if (notes) notes->push_back(status_note(name, r));
  return certified_value(r, name);
}

}  // namespace

void GroverInstance::validate() const {
  if (N < 2 || k < 1 || 2 * k > N) throw std::invalid_argument("GroverInstance: need 1 <= k <= N/2");
}

void CpfInstance::validate() const {
  if (ell < 2) throw std::invalid_argument("CpfInstance: need at least two lines");
  require_rate(r0, "CpfInstance");
  require_rate(r1, "CpfInstance");
}

void TwoAdcInstance::validate() const {
  if (!(p0 >= 0.0) || !(p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > 1e-12) {
    throw std::invalid_argument("TwoAdcInstance: priors must be non-negative and sum to 1");
  }
  require_rate(r0, "TwoAdcInstance");
  require_rate(r1, "TwoAdcInstance");
}

KrausChannel adc_channel(double r) {
  require_rate(r, "adc_channel");
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - r);
  k1(0, 1) = std::sqrt(r);
  return KrausChannel(2, 2, {k0, k1});
}

double bhattacharyya_angle(double r0, double r1) {
  require_rate(r0, "bhattacharyya_angle");
  require_rate(r1, "bhattacharyya_angle");
  const double overlap = std::sqrt(r0 * r1) + std::sqrt((1.0 - r0) * (1.0 - r1));
  return std::acos(std::clamp(overlap, 0.0, 1.0));
}

KrausChannel grover_oracle_channel(int N, const std::vector<int>& marked) {
  if (N < 1) throw std::invalid_argument("grover_oracle_channel: N must be positive");
  ComplexMatrix u = ComplexMatrix::Identity(N, N);
  for (int m : marked) {
    if (m < 0 || m >= N) throw std::invalid_argument("grover_oracle_channel: marked item out of range");
    if (u(m, m) != Complex(1.0)) throw std::invalid_argument("grover_oracle_channel: repeated marked item");
    u(m, m) = -1.0;
  }
  return KrausChannel::unitary(u);
}

DiscriminationProblem grover_problem(const GroverInstance& inst) {
  inst.validate();
  double count = 1.0;
  for (int i = 0; i < inst.k; ++i) count = count * (inst.N - i) / (i + 1);
  if (count > 5000.0) throw std::invalid_argument("grover_problem: too many marked subsets to enumerate");
  std::vector<std::vector<int>> subsets;
  std::vector<int> pick(inst.k);
  for (int i = 0; i < inst.k; ++i) pick[i] = i;
  while (true) {
    subsets.push_back(pick);
    int i = inst.k - 1;
    while (i >= 0 && pick[i] == inst.N - inst.k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < inst.k; ++j) pick[j] = pick[j - 1] + 1;
  }
  const double prior = 1.0 / static_cast<double>(subsets.size());
  std::vector<std::pair<double, KrausChannel>> oracles;
  std::vector<std::vector<int>> groups(inst.N);
  for (size_t s = 0; s < subsets.size(); ++s) {
    oracles.emplace_back(prior, grover_oracle_channel(inst.N, subsets[s]));
    for (int item : subsets[s]) groups[item].push_back(static_cast<int>(s));
  }
  return DiscriminationProblem(std::move(oracles), std::move(groups));
}

BoundResult grover_bound(const GroverInstance& inst, int n) {
  inst.validate();
  if (n < 0) throw std::invalid_argument("grover_bound: negative query count");
  const double half = grover_angle(inst);
  const double p0 = 1.0 - static_cast<double>(inst.k) / static_cast<double>(inst.N);
  BoundResult r = theorem1_bound(n, 0, std::min(2.0 * half, std::numbers::pi / 2.0), p0);
  r.params.reference = "identity";
  return r;
}

double grover_success(const GroverInstance& inst, int n) {
  inst.validate();
  if (n < 0) throw std::invalid_argument("grover_success: negative query count");
  const double angle = (2.0 * n + 1.0) * grover_angle(inst);
  if (angle > std::numbers::pi / 2.0 + 1e-12) {
    throw std::domain_error("grover_success: rotation angle exceeds pi/2");
  }
  const double s = std::sin(angle);
  return std::min(1.0, s * s);
}

DiscriminationProblem cpf_problem(const CpfInstance& inst) {
  inst.validate();
  if (inst.ell > 6) throw std::invalid_argument("cpf_problem: direct construction limited to 6 lines");
  const KrausChannel e0 = adc_channel(inst.r0);
  const KrausChannel e1 = adc_channel(inst.r1);
  std::vector<std::pair<double, KrausChannel>> oracles;
  for (int pos = 0; pos < inst.ell; ++pos) {
    KrausChannel ch = pos == 0 ? e1 : e0;
    for (int line = 1; line < inst.ell; ++line) ch = channel_tensor(ch, line == pos ? e1 : e0);
    oracles.emplace_back(1.0 / inst.ell, std::move(ch));
  }
  return DiscriminationProblem::singletons(std::move(oracles));
}

KrausChannel cpf_reference(const CpfInstance& inst) {
  inst.validate();
  if (inst.ell > 6) throw std::invalid_argument("cpf_reference: direct construction limited to 6 lines");
  const KrausChannel e0 = adc_channel(inst.r0);
  KrausChannel ch = e0;
  for (int line = 1; line < inst.ell; ++line) ch = channel_tensor(ch, e0);
  return ch;
}

double cpf_theta0(const CpfInstance& inst, double alpha, const SdpRunOptions& options) {
  inst.validate();
  return 0.5 * safe_norm(adc_channel(inst.r1), adc_channel(inst.r0), alpha, options, "theta0", nullptr);
}

double cpf_theta1(const CpfInstance& inst, double alpha, const SdpRunOptions& options) {
  inst.validate();
  // ||alpha E1 - E0|| = ||E0 - alpha E1||.
  return 0.5 * safe_norm(adc_channel(inst.r0), adc_channel(inst.r1), alpha, options, "theta1", nullptr);
}

BoundResult cpf_bound(const CpfInstance& inst, int n, int k, double alpha0, double alpha1,
                      const SdpRunOptions& options) {
  inst.validate();
  if (k < 0 || k > n) throw std::invalid_argument("cpf_bound: need 0 <= k <= n");
  const double p0 = 1.0 - 1.0 / inst.ell;
  // Validate the weights before spending solver time.
  theorem2_bound(n, 0, k, alpha0, alpha1, 0.0, 0.0, p0);
  std::vector<std::string> notes;
  const KrausChannel e0 = adc_channel(inst.r0);
  const KrausChannel e1 = adc_channel(inst.r1);
  const double theta0 = n - k > 0 ? 0.5 * safe_norm(e1, e0, alpha0, options, "theta0", &notes) : 0.0;
  const double theta1 = k > 0 ? 0.5 * safe_norm(e0, e1, alpha1, options, "theta1", &notes) : 0.0;
  BoundResult r = theorem2_bound(n, 0, k, alpha0, alpha1, theta0, theta1, p0);
  r.params.reference = "E^r0 on every line";
  r.diagnostics = std::move(notes);
  return r;
}

double two_adc_tau_a_sdp(const TwoAdcInstance& inst, const SdpRunOptions& options) {
  inst.validate();
  const ChannelSdpResult r = min_trace_norm_sdp(stinespring_from_kraus(adc_channel(inst.r0)),
                                                stinespring_from_kraus(adc_channel(inst.r1)), options);
  return std::acos(std::clamp(certified_value(r, "tau_a"), 0.0, 1.0));
}

BoundResult two_adc_bures_bound(const TwoAdcInstance& inst, int n, bool check_sdp) {
  inst.validate();
  const double delta = bhattacharyya_angle(inst.r0, inst.r1);
  BoundResult r = theorem3_bound(n, inst.p0, inst.p1, delta);
  if (check_sdp) {
    const ChannelSdpResult s = min_trace_norm_sdp(stinespring_from_kraus(adc_channel(inst.r0)),
                                                  stinespring_from_kraus(adc_channel(inst.r1)));
    certified_value(s, "tau_a");
    const double gap = std::abs(s.value - std::cos(delta));
    r.diagnostics.push_back(status_note("tau_a", s));
    r.diagnostics.push_back("closed-form vs program cosine gap " + std::to_string(gap));
    if (gap > 1e-6) throw std::runtime_error("two_adc_bures_bound: program disagrees with the closed form");
  }
  return r;
}

double two_adc_tau0(const TwoAdcInstance& inst, double alpha, const SdpRunOptions& options) {
  inst.validate();
  return safe_norm(adc_channel(inst.r0), adc_channel(inst.r1), alpha, options, "tau0", nullptr);
}

double two_adc_tau1(const TwoAdcInstance& inst, double alpha, const SdpRunOptions& options) {
  inst.validate();
  return safe_norm(adc_channel(inst.r1), adc_channel(inst.r0), alpha, options, "tau1", nullptr);
}

BoundResult two_adc_trace_bound(const TwoAdcInstance& inst, int n, int k, double alpha0, double alpha1,
                                const SdpRunOptions& options) {
  inst.validate();
  if (k < 0 || k > n) throw std::invalid_argument("two_adc_trace_bound: need 0 <= k <= n");
  theorem4_bound(n, k, inst.p0, inst.p1, alpha0, alpha1, 0.0, 0.0);
  std::vector<std::string> notes;
  const KrausChannel e0 = adc_channel(inst.r0);
  const KrausChannel e1 = adc_channel(inst.r1);
  const double tau0 = k > 0 ? safe_norm(e0, e1, alpha0, options, "tau0", &notes) : 0.0;
  const double tau1 = n - k > 0 ? safe_norm(e1, e0, alpha1, options, "tau1", &notes) : 0.0;
  BoundResult r = theorem4_bound(n, k, inst.p0, inst.p1, alpha0, alpha1, tau0, tau1);
  r.diagnostics = std::move(notes);
  return r;
}

}  // namespace chanbound
