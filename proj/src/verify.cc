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


#include "chanbound/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "chanbound/applications.h"
#include "chanbound/bounds.h"
#include "chanbound/random.h"
#include "chanbound/sdp_core.h"

namespace chanbound {

namespace {

// How far the search may beat the program before the ordering counts as broken.
constexpr double kOrderSlack = 1e-6;

Rng make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

// Times `body`, which fills in the result.
CheckResult timed(const std::string& name, double tolerance, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  body(r);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<double> random_priors(int count, Rng& rng) {
  std::vector<double> p(count);
  double sum = 0.0;
  for (auto& x : p) sum += (x = uniform(rng, 0.1, 1.0));
  for (auto& x : p) x /= sum;
  // Put the rounding remainder on the last entry so the sum is 1 to machine precision.
  double head = 0.0;
  for (int i = 0; i + 1 < count; ++i) head += p[i];
  p.back() = 1.0 - head;
  return p;
}

DensityMatrix random_state(Rng& rng, int dim) { return random_density(dim, pick(rng, 1, dim), rng); }

}  // namespace

const char* to_string(SandwichOp op) {
  switch (op) {
    case SandwichOp::kMinTraceNorm:
      return "min_trace_norm";
    case SandwichOp::kMinAvgTraceNorm:
      return "min_avg_trace_norm";
    case SandwichOp::kWeightedDiamond:
      return "weighted_diamond_norm";
    case SandwichOp::kAvgWeightedDiamond:
      return "avg_weighted_diamond";
  }
  return "unknown";
}

CheckResult sandwich_check(SandwichOp op, int instances, std::uint64_t seed, double tolerance,
                           const SearchConfig& search) {
  return timed(std::string("sandwich/") + to_string(op), tolerance, [&](CheckResult& r) {
    Rng rng = make_rng(seed, 100 + static_cast<std::uint32_t>(op));
    r.passed = true;
    for (int i = 0; i < instances; ++i) {
      SearchConfig cfg = search;
      cfg.seed = search.seed + static_cast<std::uint64_t>(i);
      double program = 0.0;
      double found = 0.0;
      bool maximize = true;
      bool usable = true;
      switch (op) {
        case SandwichOp::kMinTraceNorm: {
          const KrausChannel a = random_channel(2, 2, pick(rng, 1, 3), rng);
          const KrausChannel b = random_channel(2, 2, pick(rng, 1, 3), rng);
          const ChannelSdpResult s = min_trace_norm_sdp(stinespring_from_kraus(a), stinespring_from_kraus(b));
          usable = s.usable();
          program = s.value;
          found = min_avg_fidelity_search({{1.0, b}}, a, cfg);
          maximize = false;
          break;
        }
        case SandwichOp::kMinAvgTraceNorm: {
          const int count = pick(rng, 2, 3);
          const auto priors = random_priors(count, rng);
          std::vector<std::pair<double, KrausChannel>> oracles;
          std::vector<std::pair<double, StinespringIsometry>> isos;
          for (int c = 0; c < count; ++c) {
            oracles.emplace_back(priors[c], random_channel(2, 2, pick(rng, 1, 3), rng));
            isos.emplace_back(priors[c], stinespring_from_kraus(oracles.back().second));
          }
          const KrausChannel ref = random_channel(2, 2, pick(rng, 1, 3), rng);
          const ChannelSdpResult s = min_avg_trace_norm_sdp(isos, stinespring_from_kraus(ref));
          usable = s.usable();
          program = s.value;
          found = min_avg_fidelity_search(oracles, ref, cfg);
          maximize = false;
          break;
        }
        case SandwichOp::kWeightedDiamond: {
          const KrausChannel a = random_channel(2, 2, pick(rng, 1, 3), rng);
          const KrausChannel b = random_channel(2, 2, pick(rng, 1, 3), rng);
          const double alpha = uniform(rng, 0.0, 2.0);
          const ChannelSdpResult s = weighted_diamond_norm_sdp(a, b, alpha);
          usable = s.usable();
          program = s.value;
          found = max_weighted_trace_norm_search(a, b, alpha, cfg);
          break;
        }
        case SandwichOp::kAvgWeightedDiamond: {
          const int count = pick(rng, 2, 3);
          const auto priors = random_priors(count, rng);
          std::vector<std::pair<double, KrausChannel>> oracles;
          for (int c = 0; c < count; ++c) oracles.emplace_back(priors[c], random_channel(2, 2, pick(rng, 1, 3), rng));
          const KrausChannel ref = random_channel(2, 2, pick(rng, 1, 3), rng);
          const double alpha = uniform(rng, 0.0, 2.0);
          const WeightedSide side = pick(rng, 0, 1) == 0 ? WeightedSide::kOracleMinusRef : WeightedSide::kRefMinusOracle;
          const ChannelSdpResult s = avg_weighted_diamond_sdp(oracles, ref, alpha, side);
          usable = s.usable();
          program = s.value;
          found = max_avg_weighted_trace_norm_search(oracles, ref, alpha, side, cfg);
          break;
        }
      }
      ++r.cases;
      // Positive when the program is looser than the search; negative when the
      // search beats the program, which would mean a formulation bug.
      const double gap = maximize ? program - found : found - program;
      r.max_violation = std::max(r.max_violation, std::abs(gap));
      if (!usable || gap > tolerance || gap < -kOrderSlack) {
        r.passed = false;
        r.detail += "instance " + std::to_string(i) + ": program " + std::to_string(program) + " search " +
                    std::to_string(found) + (usable ? "" : " (solver failed)") + "; ";
      }
    }
  });
}

CheckResult triangle_check(Distance distance, int triples, std::uint64_t seed, double tolerance) {
  const char* names[] = {"bures_angle", "bures_distance", "sine_distance"};
  const int which = static_cast<int>(distance);
  return timed(std::string("triangle/") + names[which], tolerance, [&](CheckResult& r) {
    Rng rng = make_rng(seed, 200 + which);
    auto d = [&](const DensityMatrix& a, const DensityMatrix& b) {
      switch (distance) {
        case Distance::kBuresAngle:
          return bures_angle(a, b);
        case Distance::kBuresDistance:
          return bures_distance(a, b);
        case Distance::kSineDistance:
          return sine_distance(a, b);
      }
      return 0.0;
    };
    for (int i = 0; i < triples; ++i) {
      const int dim = pick(rng, 2, 4);
      const DensityMatrix a = random_state(rng, dim);
      const DensityMatrix b = random_state(rng, dim);
      const DensityMatrix c = random_state(rng, dim);
      r.max_violation = std::max(r.max_violation, d(a, c) - d(a, b) - d(b, c));
      ++r.cases;
    }
    r.passed = r.max_violation <= tolerance;
  });
}

CheckResult weighted_fuchs_check(int pairs, std::uint64_t seed, double tolerance) {
  return timed("weighted_fuchs_van_de_graaf", tolerance, [&](CheckResult& r) {
    Rng rng = make_rng(seed, 300);
    for (int i = 0; i < pairs; ++i) {
      const int dim = pick(rng, 2, 4);
      const DensityMatrix rho0 = random_state(rng, dim);
      const DensityMatrix rho1 = random_state(rng, dim);
      const double a0 = uniform(rng, 0.0, 2.0);
      const double a1 = uniform(rng, 0.0, 2.0);
      const double lhs = trace_norm(a0 * rho0.matrix() - a1 * rho1.matrix());
      r.max_violation = std::max(r.max_violation, lhs - fuchs_vdg_generalized(a0, a1, rho0, rho1));
      ++r.cases;
    }
    r.passed = r.max_violation <= tolerance;
  });
}

CheckResult fidelity_concavity_check(int mixtures, std::uint64_t seed, double tolerance) {
  return timed("fidelity_joint_concavity", tolerance, [&](CheckResult& r) {
    Rng rng = make_rng(seed, 400);
    for (int i = 0; i < mixtures; ++i) {
      const int dim = pick(rng, 2, 4);
      const DensityMatrix r0 = random_state(rng, dim);
      const DensityMatrix r1 = random_state(rng, dim);
      const DensityMatrix s0 = random_state(rng, dim);
      const DensityMatrix s1 = random_state(rng, dim);
      const double lam = uniform(rng, 0.0, 1.0);
      const DensityMatrix rho(lam * r0.matrix() + (1.0 - lam) * r1.matrix());
      const DensityMatrix sigma(lam * s0.matrix() + (1.0 - lam) * s1.matrix());
      const double mixed = lam * fidelity(r0, s0) + (1.0 - lam) * fidelity(r1, s1);
      r.max_violation = std::max(r.max_violation, mixed - fidelity(rho, sigma));
      ++r.cases;
    }
    r.passed = r.max_violation <= tolerance;
  });
}

CheckResult cptp_check(int channels, std::uint64_t seed, double tolerance) {
  return timed("cptp_validation", tolerance, [&](CheckResult& r) {
    Rng rng = make_rng(seed, 500);
    int accepted_bad = 0;
    for (int i = 0; i < channels; ++i) {
      const int din = pick(rng, 1, 3);
      const int dout = pick(rng, 1, 3);
      const int count = pick(rng, (din + dout - 1) / dout, 4);
      const KrausChannel ch = random_channel(din, dout, count, rng);
      ComplexMatrix sum = ComplexMatrix::Zero(din, din);
      for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
      r.max_violation = std::max(r.max_violation, (sum - ComplexMatrix::Identity(din, din)).cwiseAbs().maxCoeff());
      const DensityMatrix out = apply_channel(ch, random_state(rng, din));
      r.max_violation = std::max(r.max_violation, std::abs(out.matrix().trace().real() - 1.0));
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(out.matrix(), Eigen::EigenvaluesOnly);
      r.max_violation = std::max(r.max_violation, -es.eigenvalues().minCoeff());
      auto bad = ch.kraus();
      bad[0] *= 1.0 + 1e-6;
      try {
        KrausChannel broken(din, dout, bad);
        ++accepted_bad;
      } catch (const std::invalid_argument&) {
      }
      r.cases += 2;
    }
    r.passed = r.max_violation <= tolerance && accepted_bad == 0;
    if (accepted_bad > 0) r.detail = std::to_string(accepted_bad) + " perturbed channels accepted";
  });
}

CheckResult grover_check(double tolerance) {
  return timed("closed-forms/grover", tolerance, [&](CheckResult& r) {
    r.passed = true;
    for (int N : {4, 8, 16, 64, 1024}) {
      for (int k : {1, 2, N / 4}) {
        const GroverInstance inst{N, k};
        for (int n = 0;; ++n) {
          const BoundResult b = grover_bound(inst, n);
          if (!b.applicable) break;
          const double dev = std::abs(b.value + grover_success(inst, n) - 1.0);
          r.max_violation = std::max(r.max_violation, dev);
          ++r.cases;
        }
      }
    }
    const double exact = grover_bound({4, 1}, 1).value;
    if (exact != 0.0) {
      r.passed = false;
      r.detail = "N=4, k=1, n=1 bound is " + std::to_string(exact);
    }
    r.passed = r.passed && r.max_violation <= tolerance;
  });
}

CheckResult damping_angle_check(int grid, double tolerance) {
  return timed("closed-forms/damping_angle", tolerance, [&](CheckResult& r) {
    r.passed = true;
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const double r0 = (i + 1.0) / (grid + 1.0);
        const double r1 = (j + 1.0) / (grid + 1.0);
        const ChannelSdpResult s =
            min_trace_norm_sdp(stinespring_from_kraus(adc_channel(r0)), stinespring_from_kraus(adc_channel(r1)));
        const double dev = std::abs(s.value - std::cos(bhattacharyya_angle(r0, r1)));
        r.max_violation = std::max(r.max_violation, dev);
        if (!s.usable()) r.passed = false;
        ++r.cases;
      }
    }
    r.passed = r.passed && r.max_violation <= tolerance;
  });
}

std::vector<CheckResult> run_verify_suite(const std::string& suite, std::uint64_t seed, double tolerance,
                                          int instances) {
  if (suite != "all" && suite != "sandwich" && suite != "properties" && suite != "closed-forms") {
    throw std::invalid_argument("unknown verify suite \"" + suite + "\"");
  }
  if (instances < 1) throw std::invalid_argument("verify: need at least one instance");
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (all || suite == "sandwich") {
    const double tol = tolerance > 0.0 ? tolerance : 5e-4;
    SearchConfig cfg;
    cfg.seed = seed;
    for (SandwichOp op : {SandwichOp::kMinTraceNorm, SandwichOp::kMinAvgTraceNorm, SandwichOp::kWeightedDiamond,
                          SandwichOp::kAvgWeightedDiamond}) {
      out.push_back(sandwich_check(op, instances, seed, tol, cfg));
    }
  }
  if (all || suite == "properties") {
    const int count = 100 * instances;
    for (Distance d : {Distance::kBuresAngle, Distance::kBuresDistance, Distance::kSineDistance}) {
      out.push_back(triangle_check(d, count, seed));
    }
    out.push_back(weighted_fuchs_check(count, seed));
    out.push_back(fidelity_concavity_check(count, seed));
    out.push_back(cptp_check(count, seed));
  }
  if (all || suite == "closed-forms") {
    out.push_back(grover_check());
    out.push_back(damping_angle_check(5));
  }
  return out;
}

}  // namespace chanbound
