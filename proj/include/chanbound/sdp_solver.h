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

#ifndef CHANBOUND_SDP_SOLVER_H_
#define CHANBOUND_SDP_SOLVER_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "chanbound/qmat.h"

namespace chanbound::sdp {

// Block-diagonal semidefinite program in standard primal form
//
//   minimize    sum_b <C_b, X_b>
//   subject to  sum_b <A_ib, X_b> = rhs_i   for every constraint i
//               X_b >= 0                    for every block b
//
// with the dual  maximize rhs^T y  s.t.  C - sum_i y_i A_i = S >= 0.
// All coefficient matrices are real symmetric.

/// One coefficient of a symmetric matrix, stored for row <= col only; the
/// (col, row) mirror is implied.
struct Entry {
  int row;
  int col;
  double value;
};

struct BlockCoefficients {
  int block;
  std::vector<Entry> entries;
};

struct LinearConstraint {
  std::vector<BlockCoefficients> terms;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<int> block_sizes;
  std::vector<RealMatrix> objective;  // one symmetric matrix per block
  std::vector<LinearConstraint> constraints;
  std::string formulation;

  /// Checks block references, shapes and finiteness; throws std::invalid_argument.
  void validate() const;
};

/// Writes a self-describing JSON document (block sizes, objective,
/// constraint coefficients) for external verification.
void dump_json(const SdpProblem& problem, std::ostream& out);

enum class SdpStatus { kOptimal, kNearOptimal, kInfeasible, kNumericalFailure };

const char* to_string(SdpStatus status);

struct SdpSolution {
  SdpStatus status = SdpStatus::kNumericalFailure;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  std::vector<RealMatrix> x;
  std::vector<RealMatrix> s;
  RealVector y;
  double primal_infeasibility = 0.0;  // ||rhs - A(X)|| / (1 + ||rhs||)
  double dual_infeasibility = 0.0;    // ||C - S - A^T y|| / (1 + ||C||)
  double relative_gap = 0.0;
  int iterations = 0;
};

struct SolverOptions {
  double tolerance = 1e-8;
  double near_optimal_tolerance = 1e-5;
  int max_iterations = 100;
};

/// Infeasible primal-dual path-following method (HKM direction with a
/// Mehrotra predictor-corrector). Deterministic for identical inputs.
SdpSolution solve(const SdpProblem& problem, const SolverOptions& options = {});

/// [[Re h, -Im h], [Im h, Re h]]. Symmetric iff h is Hermitian, PSD iff h is
/// PSD, and Tr(embed(g) embed(h)) = 2 Re Tr(g h).
RealMatrix embed_hermitian(const ComplexMatrix& h);

/// Inverse of embed_hermitian on the image; averages the redundant copies.
ComplexMatrix unembed_hermitian(const RealMatrix& m);

}  // namespace chanbound::sdp

#endif  // CHANBOUND_SDP_SOLVER_H_
