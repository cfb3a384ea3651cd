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

#ifndef CHANBOUND_SDP_CORE_H_
#define CHANBOUND_SDP_CORE_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chanbound/qmat.h"
#include "chanbound/sdp_solver.h"

namespace chanbound {

/// Widening applied to SDP values before they enter a bound, so that solver
/// error moves the bound towards the trivial side.
inline constexpr double kSafeRounding = 1e-7;

/// Program over complex Hermitian block variables H_b, lowered to an
/// SdpProblem through embed_hermitian.
///
///   minimize sum_b Re Tr(G_b H_b)  s.t.  sum_b Re Tr(A_ib H_b) = rhs_i, H_b >= 0.
///
/// Coefficients may be arbitrary complex matrices; only their Hermitian part
/// matters. The lowered real problem carries the factor 1/2 of the
/// embedding so that objective values need no rescaling.
class HermitianProgram {
 public:
  struct Term {
    int block;
    ComplexMatrix coeff;
  };

  explicit HermitianProgram(std::string formulation) : formulation_(std::move(formulation)) {}

  int add_block(int dim);
  void add_objective(int block, const ComplexMatrix& coeff);
  void add_constraint(std::vector<Term> terms, double rhs);
  /// sum_b Tr(A_b H_b) = rhs as two real constraints (real and imaginary parts).
  void add_complex_constraint(const std::vector<Term>& terms, Complex rhs);

  int num_blocks() const { return static_cast<int>(dims_.size()); }
  int block_dim(int block) const { return dims_.at(block); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }

  sdp::SdpProblem lower() const;
  ComplexMatrix block_value(const sdp::SdpSolution& solution, int block) const;

  /// Largest violation of the complex constraints at the given Hermitian values.
  double max_violation(const std::vector<ComplexMatrix>& values) const;

 private:
  struct Constraint {
    std::vector<Term> terms;
    double rhs;
  };
  std::string formulation_;
  std::vector<int> dims_;
  std::vector<ComplexMatrix> objective_;
  std::vector<Constraint> constraints_;
};

struct SdpRunOptions {
  sdp::SolverOptions solver;
  /// When non-empty, the lowered SdpProblem is written here as JSON.
  std::string dump_path;
};

/// Outcome of one of the channel programs.
struct ChannelSdpResult {
  double value = 0.0;       // optimum as defined by the operation
  double safe_value = 0.0;  // value moved by kSafeRounding in the bound-safe direction
  ComplexMatrix sigma;      // optimizing input marginal (certificate)
  sdp::SdpStatus status = sdp::SdpStatus::kNumericalFailure;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  /// Largest violation of the complex constraints after mapping the real
  /// solution back to Hermitian blocks.
  double embedding_violation = 0.0;
  int iterations = 0;

  bool usable() const {
    return status == sdp::SdpStatus::kOptimal || status == sdp::SdpStatus::kNearOptimal;
  }
};

/// Raised when a program needed for a bound did not reach a usable status.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// safe_value of a usable result; throws SolverFailure otherwise.
double certified_value(const ChannelSdpResult& result, const std::string& what);

/// Side selector for avg_weighted_diamond_sdp.
enum class WeightedSide {
  kOracleMinusRef,  // O^xi - alpha * Psi
  kRefMinusOracle,  // alpha * O^xi - Psi
};

/// min over density operators sigma of ||Tr_B(O1 sigma O0^dagger)||_1; this is
/// the cosine of the Bures-angle quantity for two channels.
ChannelSdpResult min_trace_norm_sdp(const StinespringIsometry& o0, const StinespringIsometry& o1,
                                    const SdpRunOptions& options = {});

/// min over sigma of sum_xi p_xi ||Tr_B(O^xi sigma V^dagger)||_1 with a shared sigma.
ChannelSdpResult min_avg_trace_norm_sdp(const std::vector<std::pair<double, StinespringIsometry>>& oracles,
                                        const StinespringIsometry& reference,
                                        const SdpRunOptions& options = {});

/// ||ch0 - alpha ch1||_diamond.
ChannelSdpResult weighted_diamond_norm_sdp(const KrausChannel& ch0, const KrausChannel& ch1, double alpha,
                                           const SdpRunOptions& options = {});

/// max over a shared input of sum_xi p_xi (1/2)||(O^xi - alpha Psi)(rho)||_1, or
/// of (alpha O^xi - Psi) depending on `side`.
ChannelSdpResult avg_weighted_diamond_sdp(const std::vector<std::pair<double, KrausChannel>>& oracles,
                                          const KrausChannel& reference, double alpha, WeightedSide side,
                                          const SdpRunOptions& options = {});

/// Minimum error for discriminating rho0 (prior p0) from rho1 (prior p1).
double helstrom_error(double p0, const DensityMatrix& rho0, double p1, const DensityMatrix& rho1);

}  // namespace chanbound

#endif  // CHANBOUND_SDP_CORE_H_
