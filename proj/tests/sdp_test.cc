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

#include <gtest/gtest.h>

#include <cmath>

#include "chanbound/applications.h"
#include "chanbound/random.h"
#include "chanbound/sdp_core.h"
#include "chanbound/sdp_solver.h"

namespace chanbound {
namespace {

const Complex kI(0.0, 1.0);

sdp::SdpProblem unit_trace_problem(const RealMatrix& c) {
  sdp::SdpProblem p;
  p.block_sizes = {static_cast<int>(c.rows())};
  p.objective = {c};
  sdp::LinearConstraint trace;
  trace.rhs = 1.0;
  sdp::BlockCoefficients coeffs{0, {}};
  for (int i = 0; i < c.rows(); ++i) coeffs.entries.push_back({i, i, 1.0});
  trace.terms.push_back(coeffs);
  p.constraints.push_back(trace);
  return p;
}

TEST(Embedding, RealSymmetricIsBlockCopy) {
  RealMatrix h(2, 2);
  h << 2.0, 1.0, 1.0, 3.0;
  const RealMatrix e = sdp::embed_hermitian(h.cast<Complex>());
  ASSERT_EQ(e.rows(), 4);
  EXPECT_TRUE(e.topLeftCorner(2, 2).isApprox(h));
  EXPECT_TRUE(e.bottomRightCorner(2, 2).isApprox(h));
  EXPECT_TRUE(e.topRightCorner(2, 2).isZero());
}

TEST(Embedding, ImaginaryOffDiagonal) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = kI;
  h(1, 0) = -kI;
  const RealMatrix e = sdp::embed_hermitian(h);
  EXPECT_TRUE(e.isApprox(e.transpose()));
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(e);
  const RealVector ev = es.eigenvalues();
  EXPECT_NEAR(ev(0), -1.0, 1e-14);
  EXPECT_NEAR(ev(1), -1.0, 1e-14);
  EXPECT_NEAR(ev(2), 1.0, 1e-14);
  EXPECT_NEAR(ev(3), 1.0, 1e-14);
}

TEST(Embedding, PreservesSpectrumAndRoundTrips) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix g = random_gaussian(3, 3, rng);
    const ComplexMatrix h = 0.5 * (g + g.adjoint());
    const RealMatrix e = sdp::embed_hermitian(h);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> hs(h, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(e, Eigen::EigenvaluesOnly);
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(es.eigenvalues()(2 * j), hs.eigenvalues()(j), 1e-12);
      EXPECT_NEAR(es.eigenvalues()(2 * j + 1), hs.eigenvalues()(j), 1e-12);
    }
    EXPECT_NEAR(e.trace(), 2.0 * h.trace().real(), 1e-12);
    EXPECT_LT((sdp::unembed_hermitian(e) - h).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Solver, UnitTraceGivesSmallestEigenvalue) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const RealMatrix g = random_gaussian(4, 4, rng).real();
    const RealMatrix c = 0.5 * (g + g.transpose());
    const sdp::SdpSolution s = sdp::solve(unit_trace_problem(c));
    ASSERT_EQ(s.status, sdp::SdpStatus::kOptimal);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(c, Eigen::EigenvaluesOnly);
    EXPECT_NEAR(s.primal_objective, es.eigenvalues()(0), 1e-7);
    EXPECT_NEAR(s.dual_objective, es.eigenvalues()(0), 1e-7);
  }
}

TEST(Solver, TwoScalarBlocks) {
  sdp::SdpProblem p;
  p.block_sizes = {1, 1};
  p.objective = {RealMatrix::Constant(1, 1, 1.0), RealMatrix::Constant(1, 1, 2.0)};
  p.constraints.push_back({{{0, {{0, 0, 1.0}}}, {1, {{0, 0, 1.0}}}}, 1.0});
  const sdp::SdpSolution s = sdp::solve(p);
  ASSERT_EQ(s.status, sdp::SdpStatus::kOptimal);
  EXPECT_NEAR(s.primal_objective, 1.0, 1e-7);
  EXPECT_NEAR(s.x[0](0, 0), 1.0, 1e-6);
}

TEST(Solver, InfeasibleProblemIsNotOptimal) {
  sdp::SdpProblem p;
  p.block_sizes = {1};
  p.objective = {RealMatrix::Constant(1, 1, 1.0)};
  p.constraints.push_back({{{0, {{0, 0, 1.0}}}}, -1.0});
  const sdp::SdpSolution s = sdp::solve(p);
  EXPECT_NE(s.status, sdp::SdpStatus::kOptimal);
  EXPECT_NE(s.status, sdp::SdpStatus::kNearOptimal);
}

TEST(Solver, ValidateRejectsBadShapes) {
  sdp::SdpProblem p = unit_trace_problem(RealMatrix::Identity(2, 2));
  p.constraints[0].terms[0].entries.push_back({5, 5, 1.0});
  EXPECT_THROW(p.validate(), std::invalid_argument);
  sdp::SdpProblem q = unit_trace_problem(RealMatrix::Identity(2, 2));
  q.objective[0](0, 0) = std::nan("");
  EXPECT_THROW(q.validate(), std::invalid_argument);
}

TEST(Solver, Deterministic) {
  Rng rng(5);
  const RealMatrix g = random_gaussian(5, 5, rng).real();
  const sdp::SdpProblem p = unit_trace_problem(g + g.transpose());
  const sdp::SdpSolution a = sdp::solve(p);
  const sdp::SdpSolution b = sdp::solve(p);
  EXPECT_EQ(a.primal_objective, b.primal_objective);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_TRUE(a.x[0] == b.x[0]);
}

TEST(MinTraceNorm, IdenticalChannelsGiveOne) {
  Rng rng(6);
  const KrausChannel ch = random_channel(2, 2, 3, rng);
  const ChannelSdpResult r = min_trace_norm_sdp(stinespring_from_kraus(ch), stinespring_from_kraus(ch));
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  EXPECT_LE(r.safe_value, r.value);
}

TEST(MinTraceNorm, DampingPairClosedForm) {
  const ChannelSdpResult r =
      min_trace_norm_sdp(stinespring_from_kraus(adc_channel(0.2)), stinespring_from_kraus(adc_channel(0.4)));
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, std::sqrt(0.08) + std::sqrt(0.48), 1e-6);
  EXPECT_NEAR(r.value, 0.975663, 1e-6);
  // The optimizing input is the excited state.
  EXPECT_NEAR(r.sigma(1, 1).real(), 1.0, 1e-4);
}

TEST(MinTraceNorm, UnitaryPairMatchesPhaseHull) {
  // For unitaries the value is min over sigma of |Tr(U0^dagger U1 sigma)|,
  // i.e. the distance from 0 to the convex hull of the eigenvalues.
  ComplexMatrix u1 = ComplexMatrix::Identity(2, 2);
  u1(1, 1) = std::exp(kI * 0.8);
  const ChannelSdpResult r = min_trace_norm_sdp(stinespring_from_kraus(KrausChannel::identity(2)),
                                                stinespring_from_kraus(KrausChannel::unitary(u1)));
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, std::cos(0.4), 1e-6);
}

TEST(MinAvgTraceNorm, AllOraclesEqualReference) {
  Rng rng(7);
  const KrausChannel v = random_channel(2, 2, 2, rng);
  const StinespringIsometry iso = stinespring_from_kraus(v);
  const ChannelSdpResult r = min_avg_trace_norm_sdp({{0.3, iso}, {0.7, iso}}, iso);
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(MinAvgTraceNorm, SingleOracleReducesToPair) {
  Rng rng(8);
  const StinespringIsometry a = stinespring_from_kraus(random_channel(2, 2, 2, rng));
  const StinespringIsometry b = stinespring_from_kraus(random_channel(2, 2, 3, rng));
  const ChannelSdpResult avg = min_avg_trace_norm_sdp({{1.0, a}}, b);
  const ChannelSdpResult pair = min_trace_norm_sdp(b, a);
  ASSERT_TRUE(avg.usable() && pair.usable());
  EXPECT_NEAR(avg.value, pair.value, 1e-6);
}

TEST(MinAvgTraceNorm, GroverOraclesAgainstIdentity) {
  const DiscriminationProblem problem = grover_problem({4, 1});
  std::vector<std::pair<double, StinespringIsometry>> isos;
  for (const auto& [p, ch] : problem.oracles()) isos.emplace_back(p, stinespring_from_kraus(ch));
  const ChannelSdpResult r = min_avg_trace_norm_sdp(isos, stinespring_from_kraus(KrausChannel::identity(4)));
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, 0.5, 1e-6);
}

TEST(WeightedDiamond, ZeroWeightGivesOne) {
  Rng rng(9);
  const KrausChannel a = random_channel(2, 2, 2, rng);
  const ChannelSdpResult r = weighted_diamond_norm_sdp(a, random_channel(2, 2, 2, rng), 0.0);
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(WeightedDiamond, IdenticalChannelsUnitWeight) {
  const ChannelSdpResult r = weighted_diamond_norm_sdp(adc_channel(0.3), adc_channel(0.3), 1.0);
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, 0.0, 1e-6);
  EXPECT_GE(r.safe_value, r.value);
}

TEST(WeightedDiamond, LowerBoundedByWeightGap) {
  Rng rng(10);
  for (double alpha : {0.2, 0.7, 1.3, 2.0}) {
    const ChannelSdpResult r =
        weighted_diamond_norm_sdp(random_channel(2, 2, 2, rng), random_channel(2, 2, 2, rng), alpha);
    ASSERT_TRUE(r.usable());
    EXPECT_GE(r.value, std::abs(1.0 - alpha) - 1e-6);
    EXPECT_LE(r.value, 1.0 + alpha + 1e-6);
  }
}

TEST(WeightedDiamond, OrthogonalUnitariesReachMaximum) {
  ComplexMatrix z = ComplexMatrix::Identity(2, 2);
  z(1, 1) = -1.0;
  const ChannelSdpResult r = weighted_diamond_norm_sdp(KrausChannel::identity(2), KrausChannel::unitary(z), 1.0);
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, 2.0, 1e-6);
}

TEST(AvgWeightedDiamond, AllOraclesEqualReference) {
  const KrausChannel ref = adc_channel(0.25);
  const ChannelSdpResult r =
      avg_weighted_diamond_sdp({{0.5, ref}, {0.5, ref}}, ref, 1.0, WeightedSide::kOracleMinusRef);
  ASSERT_TRUE(r.usable());
  EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(AvgWeightedDiamond, SingleOracleIsHalfWeightedDiamond) {
  Rng rng(11);
  const KrausChannel o = random_channel(2, 2, 2, rng);
  const KrausChannel ref = random_channel(2, 2, 2, rng);
  const double alpha = 0.8;
  const ChannelSdpResult first = avg_weighted_diamond_sdp({{1.0, o}}, ref, alpha, WeightedSide::kOracleMinusRef);
  const ChannelSdpResult second = avg_weighted_diamond_sdp({{1.0, o}}, ref, alpha, WeightedSide::kRefMinusOracle);
  EXPECT_NEAR(first.value, 0.5 * weighted_diamond_norm_sdp(o, ref, alpha).value, 1e-6);
  EXPECT_NEAR(second.value, 0.5 * weighted_diamond_norm_sdp(ref, o, alpha).value, 1e-6);
}

TEST(AvgWeightedDiamond, PositionFindingReducesToOneQubit) {
  const CpfInstance inst{3, 0.10, 0.11};
  const DiscriminationProblem problem = cpf_problem(inst);
  const KrausChannel ref = cpf_reference(inst);
  for (double alpha : {0.9, 1.0}) {
    const ChannelSdpResult r =
        avg_weighted_diamond_sdp(problem.oracles(), ref, alpha, WeightedSide::kOracleMinusRef);
    ASSERT_TRUE(r.usable());
    EXPECT_NEAR(r.value, 0.5 * weighted_diamond_norm_sdp(adc_channel(0.11), adc_channel(0.10), alpha).value, 1e-6);
  }
}

TEST(SafeValue, CertifiedValueThrowsOnFailure) {
  ChannelSdpResult bad;
  bad.status = sdp::SdpStatus::kNumericalFailure;
  EXPECT_THROW(certified_value(bad, "test"), SolverFailure);
  ChannelSdpResult ok;
  ok.status = sdp::SdpStatus::kOptimal;
  ok.safe_value = 0.25;
  EXPECT_EQ(certified_value(ok, "test"), 0.25);
}

TEST(Helstrom, StandardPairs) {
  Rng rng(12);
  const DensityMatrix rho = random_density(2, 2, rng);
  EXPECT_NEAR(helstrom_error(0.5, rho, 0.5, rho), 0.5, 1e-14);
  const DensityMatrix k0 = DensityMatrix::from_pure(PureState::basis(2, 0));
  const DensityMatrix k1 = DensityMatrix::from_pure(PureState::basis(2, 1));
  EXPECT_NEAR(helstrom_error(0.5, k0, 0.5, k1), 0.0, 1e-14);
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const DensityMatrix plus = DensityMatrix::from_pure(PureState(v));
  EXPECT_NEAR(helstrom_error(0.5, k0, 0.5, plus), 0.5 * (1.0 - 1.0 / std::sqrt(2.0)), 1e-12);
  EXPECT_THROW(helstrom_error(0.6, k0, 0.6, k1), std::invalid_argument);
}

}  // namespace
}  // namespace chanbound
