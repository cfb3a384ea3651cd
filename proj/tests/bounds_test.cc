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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chanbound/random.h"

namespace chanbound {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

ComplexMatrix phase_gate(double phi) {
  ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  u(1, 1) = std::exp(kI * phi);
  return u;
}

DiscriminationProblem two_identities() {
  return DiscriminationProblem::singletons({{0.5, KrausChannel::identity(2)}, {0.5, KrausChannel::identity(2)}});
}

TEST(Problem, Validation) {
  const KrausChannel id = KrausChannel::identity(2);
  EXPECT_THROW(DiscriminationProblem::singletons({{0.6, id}, {0.6, id}}), std::invalid_argument);
  EXPECT_THROW(DiscriminationProblem::singletons({{-0.1, id}, {1.1, id}}), std::invalid_argument);
  EXPECT_THROW(DiscriminationProblem::singletons({{0.5, id}, {0.5, KrausChannel::identity(3)}}),
               std::invalid_argument);
  EXPECT_THROW(DiscriminationProblem({{0.5, id}, {0.5, id}}, {{0, 2}}), std::invalid_argument);
  EXPECT_THROW(DiscriminationProblem({{0.5, id}, {0.5, id}}, {{-1}}), std::invalid_argument);
  // Groups may overlap and need not cover every oracle.
  EXPECT_NO_THROW(DiscriminationProblem({{0.5, id}, {0.5, id}}, {{0, 1}, {1}}));
  EXPECT_NO_THROW(DiscriminationProblem({{0.5, id}, {0.5, id}}, {{0}}));
  EXPECT_NEAR(p_err_zero(DiscriminationProblem({{0.5, id}, {0.5, id}}, {})), 1.0, 0.0);
}

TEST(PErrZero, Examples) {
  EXPECT_NEAR(p_err_zero(two_identities()), 0.5, 1e-15);
  const KrausChannel id = KrausChannel::identity(2);
  const DiscriminationProblem three = DiscriminationProblem::singletons({{1.0 / 3, id}, {1.0 / 3, id}, {1.0 / 3, id}});
  EXPECT_NEAR(p_err_zero(three), 2.0 / 3.0, 1e-15);
  // Groups add their priors.
  const DiscriminationProblem grouped({{0.2, id}, {0.3, id}, {0.5, id}}, {{0, 1}, {2}});
  EXPECT_NEAR(p_err_zero(grouped), 0.5, 1e-15);
  const DiscriminationProblem grouped2({{0.4, id}, {0.3, id}, {0.3, id}}, {{0, 1}, {2}});
  EXPECT_NEAR(p_err_zero(grouped2), 0.3, 1e-15);
}

TEST(GeometricSum, Values) {
  EXPECT_EQ(geometric_sum(0.5, 0), 0.0);
  EXPECT_NEAR(geometric_sum(1.0, 7), 7.0, 1e-15);
  EXPECT_NEAR(geometric_sum(0.5, 3), 1.0 + 0.5 + 0.25, 1e-15);
  EXPECT_NEAR(geometric_sum(2.0, 4), 15.0, 1e-13);
  EXPECT_NEAR(geometric_sum(1.0 + 1e-12, 5), 5.0, 1e-9);
}

TEST(ReferenceAngleBound, AllQueriesCoveredReturnsInput) {
  const BoundResult r = theorem1_bound(5, 5, 0.4, 0.3);
  EXPECT_TRUE(r.applicable);
  EXPECT_NEAR(r.value, 0.3, 1e-15);
}

TEST(ReferenceAngleBound, GroverFormula) {
  const double theta0 = std::asin(0.25);
  const BoundResult r = theorem1_bound(2, 0, 2.0 * theta0, 1.0 - 1.0 / 16.0);
  ASSERT_TRUE(r.applicable);
  EXPECT_NEAR(r.value, std::pow(std::cos(5.0 * theta0), 2), 1e-14);
  EXPECT_NEAR(r.value, 0.0915527, 1e-7);
  EXPECT_EQ(r.kind, BoundKind::kTheorem1);
}

TEST(ReferenceAngleBound, BeyondRightAngleIsInapplicable) {
  const BoundResult r = theorem1_bound(10, 0, 0.3, 0.5);
  EXPECT_FALSE(r.applicable);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_NO_THROW(r.validate());
  EXPECT_THROW(theorem1_bound(-1, 0, 0.3, 0.5), std::invalid_argument);
  EXPECT_THROW(theorem1_bound(1, 2, 0.3, 0.5), std::invalid_argument);
  EXPECT_THROW(theorem1_bound(1, 0, -0.3, 0.5), std::invalid_argument);
}

TEST(ReferenceWeightedBound, EmptySumsReturnInput) {
  EXPECT_NEAR(theorem2_bound(4, 4, 4, 1.0, 1.0, 0.3, 0.2, 0.6).value, 0.6, 1e-15);
  EXPECT_NEAR(theorem2_bound(6, 0, 3, 0.9, 0.9, 0.0, 0.0, 0.6).value, 0.6, 1e-15);
}

TEST(ReferenceWeightedBound, MatchesScalarFormula) {
  // Weights tied by a0^(n-k) = a1^(k-m).
  const int n = 5, k = 2;
  const double a0 = 0.9, a1 = std::pow(a0, 1.5), th0 = 0.01, th1 = 0.012;
  const BoundResult r = theorem2_bound(n, 0, k, a0, a1, th0, th1, 2.0 / 3.0);
  ASSERT_TRUE(r.applicable);
  EXPECT_NEAR(r.value, 2.0 / 3.0 - (1 + a0 + a0 * a0) * th0 - (1 + a1) * th1, 1e-12);
  EXPECT_THROW(theorem2_bound(n, 0, k, a0, 1.0, th0, th1, 2.0 / 3.0), std::invalid_argument);
  EXPECT_THROW(theorem2_bound(n, 3, k, a0, a1, th0, th1, 2.0 / 3.0), std::invalid_argument);
}

TEST(PairAngleBound, Examples) {
  EXPECT_NEAR(theorem3_bound(3, 0.5, 0.5, kPi / 6.0).value, 0.0, 1e-15);
  EXPECT_NEAR(theorem3_bound(7, 0.3, 0.7, 0.0).value, 0.3, 1e-15);
  const double delta = std::acos(std::sqrt(0.1 * 0.11) + std::sqrt(0.9 * 0.89));
  EXPECT_NEAR(delta, 0.0163147, 1e-7);
  const BoundResult r = theorem3_bound(90, 0.5, 0.5, delta);
  ASSERT_TRUE(r.applicable);
  const double c = std::cos(90 * delta);
  EXPECT_NEAR(r.value, 0.5 * (1.0 - std::sqrt(1.0 - c * c)), 1e-14);
  EXPECT_NEAR(r.value, 0.00262, 1e-4);
  EXPECT_FALSE(theorem3_bound(100, 0.5, 0.5, delta).applicable);
}

TEST(PairAngleBound, SmallValuesKeepPrecision) {
  // Near the right angle the value is tiny; the stable form keeps relative accuracy.
  const double tau = (kPi / 2.0 - 1e-6) / 10.0;
  const BoundResult r = theorem3_bound(10, 0.5, 0.5, tau);
  const double c = std::cos(10 * tau);
  EXPECT_NEAR(r.value / (0.25 * c * c), 1.0, 1e-6);
}

TEST(PairWeightedBound, IdenticalChannels) {
  const BoundResult r = theorem4_bound(6, 3, 0.5, 0.5, 1.0, 1.0, 0.0, 0.0);
  ASSERT_TRUE(r.applicable);
  EXPECT_NEAR(r.value, 0.5, 1e-15);
}

TEST(PairWeightedBound, OneShotForm) {
  // n=1, k=0, equal priors: value is (1 - tau1 / 2) / 2 with alpha1 = 1.
  const BoundResult r = theorem4_bound(1, 0, 0.5, 0.5, 1.0, 1.0, 0.0, 0.4);
  ASSERT_TRUE(r.applicable);
  EXPECT_NEAR(r.value, 0.5 * (1.0 - 0.5 * 0.4), 1e-14);
}

TEST(PairWeightedBound, RejectsBrokenConstraint) {
  // p0 a0^k = p1 a1^(n-k) must hold.
  EXPECT_THROW(theorem4_bound(4, 4, 0.5, 0.5, 0.5, 1.0, 0.1, 0.1), std::invalid_argument);
  EXPECT_NO_THROW(theorem4_bound(4, 4, 0.5, 0.5, 1.0, 0.7, 0.1, 0.1));
  EXPECT_THROW(theorem4_bound(0, 0, 0.3, 0.7, 1.0, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST(FuchsVdg, Examples) {
  Rng rng(1);
  const DensityMatrix rho = random_density(2, 2, rng);
  EXPECT_NEAR(fuchs_vdg_generalized(1.0, 1.0, rho, rho), 0.0, 1e-7);
  EXPECT_NEAR(fuchs_vdg_generalized(1.0, 0.0, rho, random_density(2, 1, rng)), 1.0, 1e-15);
  for (int i = 0; i < 200; ++i) {
    const DensityMatrix a = random_density(2, 1 + i % 2, rng);
    const DensityMatrix b = random_density(2, 1 + (i / 2) % 2, rng);
    const double a0 = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const double a1 = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    EXPECT_LE(trace_norm(a0 * a.matrix() - a1 * b.matrix()), fuchs_vdg_generalized(a0, a1, a, b) + 1e-9);
  }
}

TEST(CoveringAngle, Examples) {
  EXPECT_EQ(covering_angle({1.2}), 0.0);
  EXPECT_NEAR(covering_angle({0.0, 0.3}), 0.3, 1e-15);
  EXPECT_NEAR(covering_angle({0.0, 2 * kPi / 3, 4 * kPi / 3}), 4 * kPi / 3, 1e-12);
  EXPECT_NEAR(covering_angle({0.1, 2 * kPi - 0.1}), 0.2, 1e-12);
  EXPECT_NEAR(covering_angle({0.0, kPi}), kPi, 1e-12);
}

TEST(RelativePhases, PhaseGate) {
  const auto phases = relative_eigenphases(ComplexMatrix::Identity(2, 2), phase_gate(0.3));
  ASSERT_EQ(phases.size(), 2u);
  EXPECT_NEAR(covering_angle(phases), 0.3, 1e-12);
}

TEST(UnitaryExact, Examples) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_NEAR(unitary_exact_error(3, 0.5, 0.5, id, id).value, 0.5, 1e-15);
  const BoundResult r = unitary_exact_error(1, 0.5, 0.5, id, phase_gate(0.3));
  ASSERT_TRUE(r.applicable);
  EXPECT_NEAR(r.value, 0.5 * (1.0 - std::sin(0.15)), 1e-12);
  EXPECT_NEAR(r.value, 0.425281, 1e-6);
  EXPECT_NEAR(unitary_exact_error(1, 0.5, 0.5, id, phase_gate(kPi)).value, 0.0, 1e-15);
  EXPECT_EQ(r.kind, BoundKind::kCorollary1);
}

TEST(UnitaryExact, ParallelUsesMultipliedPhases) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  // n copies multiply the covering angle by n while it stays below pi.
  const BoundResult r = unitary_exact_error(3, 0.5, 0.5, id, phase_gate(0.3));
  EXPECT_NEAR(r.value, 0.5 * (1.0 - std::sin(0.45)), 1e-12);
  EXPECT_NEAR(unitary_exact_error(12, 0.5, 0.5, id, phase_gate(0.3)).value, 0.0, 1e-15);
}

// Distance from the origin to the convex hull of points on the unit circle,
// computed from segments and a containment test.
double hull_distance(const std::vector<Complex>& pts) {
  double best = 1.0;
  for (const Complex& p : pts) best = std::min(best, std::abs(p));
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const Complex d = pts[j] - pts[i];
      const double t = std::clamp(-(std::conj(d) * pts[i]).real() / std::norm(d), 0.0, 1.0);
      best = std::min(best, std::abs(pts[i] + t * d));
      for (size_t k = j + 1; k < pts.size(); ++k) {
        auto cross = [](Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); };
        const double s1 = cross(pts[j] - pts[i], -pts[i]);
        const double s2 = cross(pts[k] - pts[j], -pts[j]);
        const double s3 = cross(pts[i] - pts[k], -pts[k]);
        if ((s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)) return 0.0;
      }
    }
  }
  return best;
}

TEST(UnitaryExact, AgreesWithHullDistance) {
  Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 2 + trial % 2;
    const int n = 1 + trial % 3;
    const ComplexMatrix u0 = random_unitary(dim, rng);
    const ComplexMatrix u1 = random_unitary(dim, rng);
    ComplexMatrix w = u0.adjoint() * u1;
    ComplexMatrix wn = ComplexMatrix::Identity(1, 1);
    for (int i = 0; i < n; ++i) wn = tensor(wn, w);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(wn);
    std::vector<Complex> pts(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    const double overlap = hull_distance(pts);
    const double expected = 0.5 * (1.0 - std::sqrt(1.0 - overlap * overlap));
    const BoundResult r = unitary_exact_error(n, 0.5, 0.5, u0, u1);
    if (r.applicable) EXPECT_NEAR(r.value, expected, 1e-9) << "trial " << trial;
  }
}

TEST(UnitaryExact, MatchesPairAngleBoundAtHalfCover) {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + trial % 3;
    const ComplexMatrix u0 = random_unitary(dim, rng);
    const ComplexMatrix u1 = random_unitary(dim, rng);
    const BoundResult exact = unitary_exact_error(1, 0.5, 0.5, u0, u1);
    const double cover = covering_angle(relative_eigenphases(u0, u1));
    if (cover >= kPi) {
      EXPECT_NEAR(exact.value, 0.0, 1e-15);
      continue;
    }
    EXPECT_NEAR(exact.value, theorem3_bound(1, 0.5, 0.5, cover / 2.0).value, 1e-10);
  }
}

TEST(Results, ValidateCatchesBadValues) {
  BoundResult r;
  r.value = 0.7;
  r.applicable = true;
  EXPECT_NO_THROW(r.validate());
  r.value = -0.1;
  EXPECT_THROW(r.validate(), std::logic_error);
  r.value = std::nan("");
  EXPECT_THROW(r.validate(), std::logic_error);
  AngleQuantities q;
  q.theta_a = 2.0;
  EXPECT_THROW(q.validate(), std::logic_error);
}

}  // namespace
}  // namespace chanbound
