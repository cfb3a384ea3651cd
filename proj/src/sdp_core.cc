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

#include "chanbound/sdp_core.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace chanbound {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

std::vector<sdp::Entry> upper_entries(const RealMatrix& m) {
  std::vector<sdp::Entry> out;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = r; c < m.cols(); ++c)
      if (m(r, c) != 0.0) out.push_back({static_cast<int>(r), static_cast<int>(c), m(r, c)});
  return out;
}

ComplexMatrix unit(int n, int row, int col) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(row, col) = 1.0;
  return e;
}

void require_priors(const std::vector<double>& priors, const char* what) {
  double sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument(std::string(what) + ": negative prior");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument(std::string(what) + ": priors do not sum to 1");
}

// Kraus operators of a pair (S, T) of linear maps A -> B (x) E with
// (Phi)(rho) = Tr_E(S rho T^dagger); zero pairs are dropped.
struct KrausPair {
  std::vector<ComplexMatrix> s;
  std::vector<ComplexMatrix> t;
};

void append_scaled(KrausPair& pair, const KrausChannel& ch, double s_scale, double t_scale) {
  if (s_scale == 0.0 && t_scale == 0.0) return;
  for (const auto& k : ch.kraus()) {
    if (k.norm() == 0.0) continue;
    pair.s.push_back(s_scale * k);
    pair.t.push_back(t_scale * k);
  }
}

// Rewrites Phi(rho) = sum_i S_i rho T_i^dagger with the fewest terms: both
// operator families are expanded in orthonormal bases of their spans and the
// coupling matrix between the bases is diagonalized by an SVD. The resulting
// S'_m (and T'_m) are linearly independent, so Tr_B(S sigma S^dagger) is
// nonsingular for full-rank sigma and the program keeps an interior.
KrausPair minimal_pair(const KrausPair& pair) {
  const int terms = static_cast<int>(pair.s.size());
  if (terms == 0) return pair;
  const auto rows = pair.s[0].rows();
  const auto cols = pair.s[0].cols();
  const auto len = rows * cols;
  auto basis = [&](const std::vector<ComplexMatrix>& ops, ComplexMatrix& q, ComplexMatrix& coeff) {
    ComplexMatrix stacked(len, terms);
    for (int i = 0; i < terms; ++i) stacked.col(i) = ops[i].reshaped();
    Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-13 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    q = svd.matrixU().leftCols(rank);
    // ops_i = sum_k q_k coeff(i, k)
    coeff = svd.matrixV().leftCols(rank) * sv.head(rank).asDiagonal();
    coeff = coeff.conjugate().eval();
  };
  ComplexMatrix qs, a, qt, b;
  basis(pair.s, qs, a);
  basis(pair.t, qt, b);
  KrausPair out;
  if (qs.cols() == 0 || qt.cols() == 0) return out;
  const ComplexMatrix coupling = a.transpose() * b.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(coupling, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-13 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  for (Eigen::Index m = 0; m < sv.size() && sv(m) > cutoff; ++m) {
    const double w = std::sqrt(sv(m));
    const ComplexVector sv_m = w * (qs * svd.matrixU().col(m));
    const ComplexVector tv_m = w * (qt * svd.matrixV().col(m));
    out.s.push_back(sv_m.reshaped(rows, cols));
    out.t.push_back(tv_m.reshaped(rows, cols));
  }
  return out;
}

// Adds the Watrous block for the pair: Y = Tr_B(S sigma S^dagger) and
// Z = Tr_B(T sigma T^dagger) tie the diagonal blocks of W = [[Y, X], [X^dagger, Z]]
// to sigma. Returns the W block index.
int add_watrous_block(HermitianProgram& prog, int sigma_block, const KrausPair& pair, double weight) {
  if (pair.s.empty()) return -1;
  const int env = static_cast<int>(pair.s.size());
  const int w = prog.add_block(2 * env);
  ComplexMatrix g = ComplexMatrix::Zero(2 * env, 2 * env);
  for (int i = 0; i < env; ++i) g(env + i, i) = 1.0;  // Re Tr(g W) = Re Tr(X)
  prog.add_objective(w, -weight * g);
  for (int half = 0; half < 2; ++half) {
    const auto& ops = half == 0 ? pair.s : pair.t;
    const int off = half * env;
    for (int i = 0; i < env; ++i) {
      for (int j = i; j < env; ++j) {
        const ComplexMatrix coupling = -(ops[j].adjoint() * ops[i]);
        std::vector<HermitianProgram::Term> terms{{w, unit(2 * env, off + j, off + i)}, {sigma_block, coupling}};
        if (i == j) {
          prog.add_constraint(std::move(terms), 0.0);
        } else {
          prog.add_complex_constraint(terms, 0.0);
        }
      }
    }
  }
  return w;
}

// W = [[Y, X], [X^dagger, Z]] with X = Tr_B(O sigma V^dagger); minimizing
// (1/2)Tr(W) yields ||X||_1.
int add_trace_norm_block(HermitianProgram& prog, int sigma_block, const StinespringIsometry& o,
                         const StinespringIsometry& v, double weight) {
  const int env = o.dim_env();
  const int w = prog.add_block(2 * env);
  prog.add_objective(w, 0.5 * weight * ComplexMatrix::Identity(2 * env, 2 * env));
  std::vector<ComplexMatrix> ko, kv;
  for (int e = 0; e < env; ++e) {
    ko.push_back(o.kraus_operator(e));
    kv.push_back(v.kraus_operator(e));
  }
  for (int i = 0; i < env; ++i) {
    for (int j = 0; j < env; ++j) {
      // X_ij = Tr(O_i sigma V_j^dagger) sits at W(i, env + j).
      prog.add_complex_constraint({{w, unit(2 * env, env + j, i)}, {sigma_block, -(kv[j].adjoint() * ko[i])}}, 0.0);
    }
  }
  return w;
}

int add_density_block(HermitianProgram& prog, int dim) {
  const int sigma = prog.add_block(dim);
  prog.add_constraint({{sigma, ComplexMatrix::Identity(dim, dim)}}, 1.0);
  return sigma;
}

// Every weighted difference vanished: the maximum is exactly zero.
ChannelSdpResult zero_map_result(int dim) {
  ChannelSdpResult r;
  r.status = sdp::SdpStatus::kOptimal;
  r.safe_value = kSafeRounding;
  r.sigma = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  return r;
}

enum class Sense { kMinimize, kMaximize };

ChannelSdpResult run(const HermitianProgram& prog, int sigma_block, Sense sense, double scale,
                     const SdpRunOptions& options) {
  const sdp::SdpProblem problem = prog.lower();
  if (!options.dump_path.empty()) {
    std::ofstream out(options.dump_path);
    if (!out) throw std::runtime_error("cannot open SDP dump file " + options.dump_path);
    sdp::dump_json(problem, out);
  }
  const sdp::SdpSolution sol = sdp::solve(problem, options.solver);
  ChannelSdpResult r;
  r.status = sol.status;
  r.primal_objective = sol.primal_objective;
  r.dual_objective = sol.dual_objective;
  r.primal_infeasibility = sol.primal_infeasibility;
  r.dual_infeasibility = sol.dual_infeasibility;
  r.iterations = sol.iterations;
  std::vector<ComplexMatrix> values;
  for (int b = 0; b < prog.num_blocks(); ++b) values.push_back(prog.block_value(sol, b));
  r.embedding_violation = prog.max_violation(values);
  r.sigma = values[sigma_block];
  if (sense == Sense::kMinimize) {
    r.value = scale * sol.primal_objective;
    r.safe_value = scale * std::min(sol.primal_objective, sol.dual_objective) - kSafeRounding;
  } else {
    r.value = -scale * sol.primal_objective;
    r.safe_value = -scale * std::min(sol.primal_objective, sol.dual_objective) + kSafeRounding;
  }
  return r;
}

}  // namespace

int HermitianProgram::add_block(int dim) {
  if (dim <= 0) throw std::invalid_argument("HermitianProgram: block dimension must be positive");
  dims_.push_back(dim);
  objective_.push_back(ComplexMatrix::Zero(dim, dim));
  return static_cast<int>(dims_.size()) - 1;
}

void HermitianProgram::add_objective(int block, const ComplexMatrix& coeff) {
  if (coeff.rows() != dims_.at(block) || coeff.cols() != dims_.at(block)) {
    throw std::invalid_argument("HermitianProgram: objective coefficient has wrong shape");
  }
  objective_[block] += coeff;
}

void HermitianProgram::add_constraint(std::vector<Term> terms, double rhs) {
  for (const auto& t : terms) {
    if (t.coeff.rows() != dims_.at(t.block) || t.coeff.cols() != dims_.at(t.block)) {
      throw std::invalid_argument("HermitianProgram: constraint coefficient has wrong shape");
    }
    require_finite(t.coeff, "HermitianProgram");
  }
  constraints_.push_back({std::move(terms), rhs});
}

void HermitianProgram::add_complex_constraint(const std::vector<Term>& terms, Complex rhs) {
  // Re Tr(A H) and Im Tr(A H) = Re Tr(-i A H).
  add_constraint(terms, rhs.real());
  std::vector<Term> imag = terms;
  for (auto& t : imag) t.coeff *= Complex(0.0, -1.0);
  add_constraint(std::move(imag), rhs.imag());
}

sdp::SdpProblem HermitianProgram::lower() const {
  sdp::SdpProblem p;
  p.formulation = formulation_;
  for (size_t b = 0; b < dims_.size(); ++b) {
    p.block_sizes.push_back(2 * dims_[b]);
    p.objective.push_back(0.5 * sdp::embed_hermitian(hermitian_part(objective_[b])));
  }
  for (const auto& c : constraints_) {
    sdp::LinearConstraint lc;
    lc.rhs = c.rhs;
    for (const auto& t : c.terms) {
      auto entries = upper_entries(0.5 * sdp::embed_hermitian(hermitian_part(t.coeff)));
      if (!entries.empty()) lc.terms.push_back({t.block, std::move(entries)});
    }
    p.constraints.push_back(std::move(lc));
  }
  return p;
}

ComplexMatrix HermitianProgram::block_value(const sdp::SdpSolution& solution, int block) const {
  return sdp::unembed_hermitian(solution.x.at(block));
}

double HermitianProgram::max_violation(const std::vector<ComplexMatrix>& values) const {
  double worst = 0.0;
  for (const auto& c : constraints_) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += (t.coeff * values.at(t.block)).trace().real();
    worst = std::max(worst, std::abs(lhs - c.rhs));
  }
  return worst;
}

ChannelSdpResult min_trace_norm_sdp(const StinespringIsometry& o0, const StinespringIsometry& o1,
                                    const SdpRunOptions& options) {
  if (o0.dim_in() != o1.dim_in() || o0.dim_out() != o1.dim_out()) {
    throw std::invalid_argument("min_trace_norm_sdp: isometries act on different spaces");
  }
  const int env = std::max(o0.dim_env(), o1.dim_env());
  HermitianProgram prog("min_trace_norm");
  const int sigma = add_density_block(prog, o0.dim_in());
  add_trace_norm_block(prog, sigma, o1.padded(env), o0.padded(env), 1.0);
  ChannelSdpResult r = run(prog, sigma, Sense::kMinimize, 1.0, options);
  r.value = std::clamp(r.value, 0.0, 1.0);
  r.safe_value = std::clamp(r.safe_value, 0.0, 1.0);
  return r;
}

ChannelSdpResult min_avg_trace_norm_sdp(const std::vector<std::pair<double, StinespringIsometry>>& oracles,
                                        const StinespringIsometry& reference, const SdpRunOptions& options) {
  if (oracles.empty()) throw std::invalid_argument("min_avg_trace_norm_sdp: no oracles");
  std::vector<double> priors;
  int env = reference.dim_env();
  for (const auto& [p, o] : oracles) {
    priors.push_back(p);
    if (o.dim_in() != reference.dim_in() || o.dim_out() != reference.dim_out()) {
      throw std::invalid_argument("min_avg_trace_norm_sdp: oracle and reference act on different spaces");
    }
    env = std::max(env, o.dim_env());
  }
  require_priors(priors, "min_avg_trace_norm_sdp");
  HermitianProgram prog("min_avg_trace_norm");
  const int sigma = add_density_block(prog, reference.dim_in());
  const StinespringIsometry ref = reference.padded(env);
  for (const auto& [p, o] : oracles) {
    if (p == 0.0) continue;
    add_trace_norm_block(prog, sigma, o.padded(env), ref, p);
  }
  ChannelSdpResult r = run(prog, sigma, Sense::kMinimize, 1.0, options);
  r.value = std::clamp(r.value, 0.0, 1.0);
  r.safe_value = std::clamp(r.safe_value, 0.0, 1.0);
  return r;
}

ChannelSdpResult weighted_diamond_norm_sdp(const KrausChannel& ch0, const KrausChannel& ch1, double alpha,
                                           const SdpRunOptions& options) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("weighted_diamond_norm_sdp: alpha must be non-negative");
  }
  if (ch0.dim_in() != ch1.dim_in() || ch0.dim_out() != ch1.dim_out()) {
    throw std::invalid_argument("weighted_diamond_norm_sdp: channels act on different spaces");
  }
  KrausPair pair;
  append_scaled(pair, ch0, 1.0, 1.0);
  append_scaled(pair, ch1, std::sqrt(alpha), -std::sqrt(alpha));
  HermitianProgram prog("weighted_diamond_norm");
  const int sigma = add_density_block(prog, ch0.dim_in());
  pair = minimal_pair(pair);
  if (pair.s.empty()) return zero_map_result(ch0.dim_in());
  add_watrous_block(prog, sigma, pair, 1.0);
  ChannelSdpResult r = run(prog, sigma, Sense::kMaximize, 1.0, options);
  r.value = std::max(r.value, 0.0);
  r.safe_value = std::max(r.safe_value, 0.0);
  return r;
}

ChannelSdpResult avg_weighted_diamond_sdp(const std::vector<std::pair<double, KrausChannel>>& oracles,
                                          const KrausChannel& reference, double alpha, WeightedSide side,
                                          const SdpRunOptions& options) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("avg_weighted_diamond_sdp: alpha must be non-negative");
  }
  if (oracles.empty()) throw std::invalid_argument("avg_weighted_diamond_sdp: no oracles");
  std::vector<double> priors;
  for (const auto& [p, o] : oracles) {
    priors.push_back(p);
    if (o.dim_in() != reference.dim_in() || o.dim_out() != reference.dim_out()) {
      throw std::invalid_argument("avg_weighted_diamond_sdp: oracle and reference act on different spaces");
    }
  }
  require_priors(priors, "avg_weighted_diamond_sdp");
  const double root = std::sqrt(alpha);
  HermitianProgram prog("avg_weighted_diamond");
  const int sigma = add_density_block(prog, reference.dim_in());
  int active = 0;
  for (const auto& [p, o] : oracles) {
    if (p == 0.0) continue;
    KrausPair pair;
    if (side == WeightedSide::kOracleMinusRef) {
      append_scaled(pair, o, 1.0, 1.0);
      append_scaled(pair, reference, root, -root);
    } else {
      append_scaled(pair, o, root, root);
      append_scaled(pair, reference, 1.0, -1.0);
    }
    pair = minimal_pair(pair);
    if (pair.s.empty()) continue;
    add_watrous_block(prog, sigma, pair, p);
    ++active;
  }
  if (active == 0) return zero_map_result(reference.dim_in());
  // The program maximizes sum_xi p_xi Re Tr(X^xi) = 2 * (weighted average of half trace norms).
  ChannelSdpResult r = run(prog, sigma, Sense::kMaximize, 0.5, options);
  r.value = std::max(r.value, 0.0);
  r.safe_value = std::max(r.safe_value, 0.0);
  return r;
}

double certified_value(const ChannelSdpResult& result, const std::string& what) {
  if (!result.usable()) {
    throw SolverFailure(what + ": solver finished with status " + sdp::to_string(result.status));
  }
  return result.safe_value;
}

double helstrom_error(double p0, const DensityMatrix& rho0, double p1, const DensityMatrix& rho1) {
  require_priors({p0, p1}, "helstrom_error");
  if (rho0.dim() != rho1.dim()) throw std::invalid_argument("helstrom_error: dimension mismatch");
  return std::clamp(0.5 * (1.0 - trace_norm(p0 * rho0.matrix() - p1 * rho1.matrix())), 0.0, 0.5);
}

}  // namespace chanbound
