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

#include "chanbound/qmat.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chanbound {

namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

// Square root of a positive semidefinite operator; tiny negative
// eigenvalues from rounding are clamped to zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& p) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p);
  // Eigenvalues at rounding level are treated as zero; their square roots
  // would otherwise inject errors of order sqrt(eps).
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  RealVector ev = es.eigenvalues().unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

void require_finite(const ComplexMatrix& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("PureState: empty amplitude vector");
  require_finite(amplitudes_, "PureState");
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kTrace) {
    throw std::invalid_argument("PureState: amplitudes are not normalized");
  }
}

PureState PureState::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  require_finite(m, "DensityMatrix");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  matrix_ = 0.5 * (m + m.adjoint());
  if (std::abs(matrix_.trace().real() - 1.0) > tol::kTrace) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kPsd) {
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

KrausChannel::KrausChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
  if (dim_in_ <= 0 || dim_out_ <= 0) throw std::invalid_argument("KrausChannel: dimensions must be positive");
  if (kraus_.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  ComplexMatrix sum = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw std::invalid_argument("KrausChannel: Kraus operator has wrong shape");
    }
    require_finite(k, "KrausChannel");
    sum += k.adjoint() * k;
  }
  const double err = (sum - ComplexMatrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
  if (err > tol::kCptp) {
    throw std::invalid_argument("KrausChannel: not trace preserving (deviation " + std::to_string(err) + ")");
  }
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel(dim, dim, {ComplexMatrix::Identity(dim, dim)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("KrausChannel::unitary: matrix must be square");
  const int d = static_cast<int>(u.rows());
  return KrausChannel(d, d, {u});
}

StinespringIsometry::StinespringIsometry(int dim_in, int dim_out, int dim_env, ComplexMatrix matrix)
    : dim_in_(dim_in), dim_out_(dim_out), dim_env_(dim_env), matrix_(std::move(matrix)) {
  if (dim_in_ <= 0 || dim_out_ <= 0 || dim_env_ <= 0) {
    throw std::invalid_argument("StinespringIsometry: dimensions must be positive");
  }
  if (matrix_.rows() != dim_out_ * dim_env_ || matrix_.cols() != dim_in_) {
    throw std::invalid_argument("StinespringIsometry: matrix has wrong shape");
  }
  require_finite(matrix_, "StinespringIsometry");
  const double err =
      (matrix_.adjoint() * matrix_ - ComplexMatrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
  if (err > tol::kCptp) throw std::invalid_argument("StinespringIsometry: V^dagger V != I");
}

ComplexMatrix StinespringIsometry::kraus_operator(int e) const {
  if (e < 0 || e >= dim_env_) throw std::out_of_range("StinespringIsometry::kraus_operator");
  ComplexMatrix k(dim_out_, dim_in_);
  for (int b = 0; b < dim_out_; ++b) k.row(b) = matrix_.row(b * dim_env_ + e);
  return k;
}

StinespringIsometry StinespringIsometry::padded(int dim_env) const {
  if (dim_env < dim_env_) throw std::invalid_argument("StinespringIsometry::padded: cannot shrink environment");
  ComplexMatrix m = ComplexMatrix::Zero(dim_out_ * dim_env, dim_in_);
  for (int b = 0; b < dim_out_; ++b) {
    for (int e = 0; e < dim_env_; ++e) m.row(b * dim_env + e) = matrix_.row(b * dim_env_ + e);
  }
  return StinespringIsometry(dim_in_, dim_out_, dim_env, std::move(m));
}

double trace_norm(const ComplexMatrix& m) {
  require_finite(m, "trace_norm");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
  return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

double fidelity_psd(const ComplexMatrix& p, const ComplexMatrix& q) {
  // Sum of singular values of sqrt(p) sqrt(q).
  const ComplexMatrix product = psd_sqrt(p) * psd_sqrt(q);
  return Eigen::JacobiSVD<ComplexMatrix>(product).singularValues().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "fidelity");
  return std::clamp(fidelity_psd(rho.matrix(), sigma.matrix()), 0.0, 1.0);
}

double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::acos(fidelity(rho, sigma));
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 2.0 * std::sin(0.5 * bures_angle(rho, sigma));
}

double sine_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::sin(bures_angle(rho, sigma));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::pair<int, int> dims, Subsystem keep) {
  const auto [d1, d2] = dims;
  if (d1 <= 0 || d2 <= 0 || m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw std::invalid_argument("partial_trace: operator does not match subsystem dimensions");
  }
  if (keep == Subsystem::kFirst) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j)
        for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

KrausChannel channel_tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) ops.push_back(tensor(ka, kb));
  return KrausChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(ops));
}

ComplexMatrix apply_kraus(const KrausChannel& ch, const ComplexMatrix& m) {
  if (m.rows() != ch.dim_in() || m.cols() != ch.dim_in()) {
    throw std::invalid_argument("apply_kraus: operator does not match channel input dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim_out(), ch.dim_out());
  for (const auto& k : ch.kraus()) out.noalias() += k * m * k.adjoint();
  return out;
}

ComplexMatrix apply_kraus_with_reference(const KrausChannel& ch, const ComplexMatrix& m, int dim_ref) {
  const int din = ch.dim_in();
  const int dout = ch.dim_out();
  if (dim_ref <= 0 || m.rows() != din * dim_ref || m.cols() != din * dim_ref) {
    throw std::invalid_argument("apply_kraus_with_reference: operator does not match A (x) R");
  }
  // Treat m as a din x din array of dim_ref x dim_ref blocks; (K (x) I) acts on the block indices.
  ComplexMatrix out = ComplexMatrix::Zero(dout * dim_ref, dout * dim_ref);
  ComplexMatrix tmp(dout * dim_ref, din * dim_ref);
  for (const auto& k : ch.kraus()) {
    tmp.setZero();
    for (int b = 0; b < dout; ++b)
      for (int a = 0; a < din; ++a) {
        const Complex c = k(b, a);
        if (c == Complex(0.0)) continue;
        tmp.middleRows(b * dim_ref, dim_ref) += c * m.middleRows(a * dim_ref, dim_ref);
      }
    for (int b = 0; b < dout; ++b)
      for (int a = 0; a < din; ++a) {
        const Complex c = std::conj(k(b, a));
        if (c == Complex(0.0)) continue;
        out.middleCols(b * dim_ref, dim_ref) += c * tmp.middleCols(a * dim_ref, dim_ref);
      }
  }
  return out;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  require_same_dim(ch.dim_in(), rho.dim(), "apply_channel");
  return DensityMatrix(apply_kraus(ch, rho.matrix()));
}

StinespringIsometry stinespring_from_kraus(const KrausChannel& ch) {
  const int env = static_cast<int>(ch.kraus().size());
  ComplexMatrix v(ch.dim_out() * env, ch.dim_in());
  for (int e = 0; e < env; ++e)
    for (int b = 0; b < ch.dim_out(); ++b) v.row(b * env + e) = ch.kraus()[e].row(b);
  return StinespringIsometry(ch.dim_in(), ch.dim_out(), env, std::move(v));
}

ComplexMatrix apply_isometry(const StinespringIsometry& v, const ComplexMatrix& m) {
  if (m.rows() != v.dim_in() || m.cols() != v.dim_in()) {
    throw std::invalid_argument("apply_isometry: operator does not match isometry input dimension");
  }
  const ComplexMatrix full = v.matrix() * m * v.matrix().adjoint();
  return partial_trace(full, {v.dim_out(), v.dim_env()}, Subsystem::kFirst);
}

ComplexVector canonical_purification(const ComplexMatrix& sigma) {
  if (sigma.rows() != sigma.cols()) throw std::invalid_argument("canonical_purification: matrix must be square");
  const auto d = sigma.rows();
  const ComplexMatrix root = psd_sqrt(0.5 * (sigma + sigma.adjoint()));
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index a = 0; a < d; ++a) v(a * d + i) = root(a, i);
  return v;
}

bool is_unitary(const ComplexMatrix& u, double tolerance) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const auto n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace chanbound
