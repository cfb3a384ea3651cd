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


#ifndef CHANBOUND_VERIFY_H_
#define CHANBOUND_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "chanbound/oracle.h"

namespace chanbound {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_violation = 0.0;  // largest observed deviation in the checked direction
  double tolerance = 0.0;
  int cases = 0;
  double seconds = 0.0;
  std::string detail;
};

/// The four channel programs checked against the brute-force search.
enum class SandwichOp { kMinTraceNorm, kMinAvgTraceNorm, kWeightedDiamond, kAvgWeightedDiamond };

const char* to_string(SandwichOp op);

/// Random qubit instances: the search value must not beat the program value
/// by more than 1e-6, and the program must stay within `tolerance` of it.
CheckResult sandwich_check(SandwichOp op, int instances, std::uint64_t seed, double tolerance,
                           const SearchConfig& search = {});

enum class Distance { kBuresAngle, kBuresDistance, kSineDistance };

/// d(a, c) <= d(a, b) + d(b, c) on random states of dimension 2 to 4.
CheckResult triangle_check(Distance distance, int triples, std::uint64_t seed, double tolerance = 1e-9);

/// ||a0 rho0 - a1 rho1||_1 <= fuchs_vdg_generalized(a0, a1, rho0, rho1).
CheckResult weighted_fuchs_check(int pairs, std::uint64_t seed, double tolerance = 1e-9);

/// F(mixture of rho, mixture of sigma) >= mixture of F(rho_i, sigma_i).
CheckResult fidelity_concavity_check(int mixtures, std::uint64_t seed, double tolerance = 1e-9);

/// Random channels validate and produce density matrices; perturbed Kraus
/// sets that break trace preservation are rejected.
CheckResult cptp_check(int channels, std::uint64_t seed, double tolerance = 1e-9);

/// Grover bound plus success probability equals 1 across sizes.
CheckResult grover_check(double tolerance = 1e-12);

/// min_trace_norm_sdp on damping isometries against the closed form.
CheckResult damping_angle_check(int grid, double tolerance = 1e-6);

/// Runs a named suite: "sandwich", "properties", "closed-forms" or "all".
/// `tolerance` replaces the sandwich agreement tolerance when positive.
std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed, double tolerance,
                                          int instances);

}  // namespace chanbound

#endif  // CHANBOUND_VERIFY_H_
