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

#ifndef CHANBOUND_QMAT_H_
#define CHANBOUND_QMAT_H_

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace chanbound {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
inline constexpr double kPsd = 1e-8;
inline constexpr double kCptp = 1e-9;
}  // namespace tol

/// Throws std::invalid_argument if any entry of `m` is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// A normalized state vector.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  /// Computational basis vector |index> of dimension `dim`.
  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

/// A density operator: Hermitian, positive semidefinite, unit trace.
///
/// The constructor validates the invariants with tol::kHermitian,
/// tol::kPsd and tol::kTrace and stores the Hermitian part of its input.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// A completely positive trace-preserving map given by Kraus operators,
/// each of shape dim_out x dim_in.
class KrausChannel {
 public:
  KrausChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus);

  static KrausChannel identity(int dim);
  static KrausChannel unitary(const ComplexMatrix& u);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  int dim_in_;
  int dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

/// Isometry V : A -> B (x) E with the environment as the fast index, so that
/// row b * dim_env + e holds <b, e| V.
class StinespringIsometry {
 public:
  StinespringIsometry(int dim_in, int dim_out, int dim_env, ComplexMatrix matrix);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  int dim_env() const { return dim_env_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// The operator <e|V : A -> B, i.e. the e-th Kraus operator.
  ComplexMatrix kraus_operator(int e) const;

  /// Copy with the environment enlarged to `dim_env` by zero Kraus operators.
  StinespringIsometry padded(int dim_env) const;

 private:
  int dim_in_;
  int dim_out_;
  int dim_env_;
  ComplexMatrix matrix_;
};

enum class Subsystem { kFirst, kSecond };

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// ||sqrt(rho) sqrt(sigma)||_1, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Fidelity of two positive semidefinite operators without normalization
/// checks; used on unnormalized or intermediate operators.
double fidelity_psd(const ComplexMatrix& p, const ComplexMatrix& q);

double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma);
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double sine_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Partial trace over one factor of a bipartite operator on C^d1 (x) C^d2,
/// where the first factor varies slowest. `keep` names the factor retained.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::pair<int, int> dims, Subsystem keep);

/// Kronecker product, left factor slowest.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

KrausChannel channel_tensor(const KrausChannel& a, const KrausChannel& b);

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

/// sum_i K_i m K_i^dagger for an arbitrary operator m on the input space.
ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& m);

/// (ch (x) id_R)(m) for m acting on A (x) R with dim(R) = dim_ref.
ComplexMatrix apply_kraus_with_reference(const KrausChannel& ch, const ComplexMatrix& m, int dim_ref);

StinespringIsometry stinespring_from_kraus(const KrausChannel& ch);

/// Tr_E(V m V^dagger).
ComplexMatrix apply_isometry(const StinespringIsometry& v, const ComplexMatrix& m);

/// sum_i (sqrt(sigma)|i>) (x) |i>, a vector on A (x) R whose reduced state on A is sigma.
ComplexVector canonical_purification(const ComplexMatrix& sigma);

bool is_unitary(const ComplexMatrix& u, double tolerance = tol::kCptp);

}  // namespace chanbound

#endif  // CHANBOUND_QMAT_H_
