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

#include "chanbound/sdp_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace chanbound::sdp {

namespace {

constexpr double kUnboundedStep = 1e30;

struct FullEntry {
  int row;
  int col;
  double value;
};

// One block term of a constraint. Terms with few nonzeros are kept as an
// entry list over both triangles; dense ones also carry the full matrix.
struct CompiledTerm {
  int block;
  const std::vector<Entry>* entries;
  std::vector<FullEntry> full;
  bool dense = false;
  RealMatrix matrix;
};

struct Compiled {
  std::vector<int> sizes;
  int total_dim = 0;
  std::vector<std::vector<CompiledTerm>> terms;        // per constraint
  std::vector<std::vector<std::pair<int, int>>> users;  // per block: (constraint, term)
  RealVector rhs;
  const std::vector<RealMatrix>* objective = nullptr;
};

using Blocks = std::vector<RealMatrix>;

Compiled compile(const SdpProblem& p) {
  Compiled c;
  c.sizes = p.block_sizes;
  for (int n : c.sizes) c.total_dim += n;
  const int m = static_cast<int>(p.constraints.size());
  c.terms.resize(m);
  c.users.resize(c.sizes.size());
  c.rhs.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& con = p.constraints[i];
    c.rhs(i) = con.rhs;
    for (const auto& t : con.terms) {
      const int n = c.sizes[t.block];
      CompiledTerm ct{t.block, &t.entries, {}, false, {}};
      for (const auto& e : t.entries) {
        ct.full.push_back({e.row, e.col, e.value});
        if (e.row != e.col) ct.full.push_back({e.col, e.row, e.value});
      }
      ct.dense = static_cast<int>(ct.full.size()) > 2 * n;
      if (ct.dense) {
        ct.matrix = RealMatrix::Zero(n, n);
        for (const auto& e : ct.full) ct.matrix(e.row, e.col) += e.value;
      }
      c.users[t.block].emplace_back(i, static_cast<int>(c.terms[i].size()));
      c.terms[i].push_back(std::move(ct));
    }
  }
  c.objective = &p.objective;
  return c;
}

// <A, M> for a symmetric A given by its upper-triangular entries and a
// general square M.
double sparse_inner(const std::vector<Entry>& entries, const RealMatrix& m) {
  double sum = 0.0;
  for (const auto& e : entries) {
    sum += e.row == e.col ? e.value * m(e.row, e.col) : e.value * (m(e.row, e.col) + m(e.col, e.row));
  }
  return sum;
}

RealVector apply_a(const Compiled& c, const Blocks& x) {
  RealVector out(c.terms.size());
  for (size_t i = 0; i < c.terms.size(); ++i) {
    double s = 0.0;
    for (const auto& t : c.terms[i]) s += sparse_inner(*t.entries, x[t.block]);
    out(static_cast<Eigen::Index>(i)) = s;
  }
  return out;
}

Blocks apply_at(const Compiled& c, const RealVector& y) {
  Blocks out;
  for (int n : c.sizes) out.push_back(RealMatrix::Zero(n, n));
  for (size_t i = 0; i < c.terms.size(); ++i) {
    const double yi = y(static_cast<Eigen::Index>(i));
    if (yi == 0.0) continue;
    for (const auto& t : c.terms[i]) {
      for (const auto& e : *t.entries) {
        out[t.block](e.row, e.col) += yi * e.value;
        if (e.row != e.col) out[t.block](e.col, e.row) += yi * e.value;
      }
    }
  }
  return out;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double frobenius(const Blocks& a) { return std::sqrt(inner(a, a)); }

RealMatrix symmetrized(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

// Inverse Cholesky factor L^-1 of a positive definite block, or an empty
// matrix if the factorization fails.
RealMatrix inverse_cholesky(const RealMatrix& x) {
  Eigen::LLT<RealMatrix> llt(x);
  if (llt.info() != Eigen::Success) return {};
  return llt.matrixL().solve(RealMatrix::Identity(x.rows(), x.cols()));
}

// Largest t with x + t * dx >= 0, given L^-1 for x = L L^T.
double max_step(const RealMatrix& linv, const RealMatrix& dx) {
  if (linv.size() == 0) return 0.0;
  const RealMatrix w = linv * dx * linv.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(symmetrized(w), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  return lo >= 0.0 ? kUnboundedStep : -1.0 / lo;
}

double max_step(const Blocks& linv, const Blocks& dx) {
  double step = kUnboundedStep;
  for (size_t k = 0; k < linv.size(); ++k) step = std::min(step, max_step(linv[k], dx[k]));
  return step;
}

struct Progress {
  double pobj;
  double dobj;
  double pinf;
  double dinf;
  double gap;
  double worst() const { return std::max({pinf, dinf, gap}); }
};

}  // namespace

void SdpProblem::validate() const {
  if (objective.size() != block_sizes.size()) {
    throw std::invalid_argument("SdpProblem: objective must have one matrix per block");
  }
  for (size_t b = 0; b < block_sizes.size(); ++b) {
    const int n = block_sizes[b];
    if (n <= 0) throw std::invalid_argument("SdpProblem: block sizes must be positive");
    if (objective[b].rows() != n || objective[b].cols() != n) {
      throw std::invalid_argument("SdpProblem: objective block " + std::to_string(b) + " has wrong shape");
    }
    if (!objective[b].allFinite()) throw std::invalid_argument("SdpProblem: non-finite objective");
  }
  for (size_t i = 0; i < constraints.size(); ++i) {
    const auto& con = constraints[i];
    if (!std::isfinite(con.rhs)) throw std::invalid_argument("SdpProblem: non-finite right-hand side");
    for (const auto& t : con.terms) {
      if (t.block < 0 || t.block >= static_cast<int>(block_sizes.size())) {
        throw std::invalid_argument("SdpProblem: constraint " + std::to_string(i) + " references unknown block");
      }
      const int n = block_sizes[t.block];
      for (const auto& e : t.entries) {
        if (e.row < 0 || e.col < e.row || e.col >= n) {
          throw std::invalid_argument("SdpProblem: constraint " + std::to_string(i) + " has an entry out of shape");
        }
        if (!std::isfinite(e.value)) throw std::invalid_argument("SdpProblem: non-finite coefficient");
      }
    }
  }
}

void dump_json(const SdpProblem& problem, std::ostream& out) {
  using nlohmann::json;
  json doc;
  doc["format"] = "chanbound-sdp";
  doc["sense"] = "minimize";
  doc["description"] =
      "minimize sum_b <C_b, X_b> s.t. sum_b <A_ib, X_b> = rhs_i, X_b PSD; symmetric "
      "coefficients listed as upper-triangular [row, col, value] triples";
  doc["formulation"] = problem.formulation;
  doc["block_sizes"] = problem.block_sizes;
  json obj = json::array();
  for (const auto& c : problem.objective) {
    json entries = json::array();
    for (Eigen::Index r = 0; r < c.rows(); ++r)
      for (Eigen::Index col = r; col < c.cols(); ++col)
        if (c(r, col) != 0.0) entries.push_back({r, col, c(r, col)});
    obj.push_back(entries);
  }
  doc["objective"] = obj;
  json cons = json::array();
  for (const auto& con : problem.constraints) {
    json terms = json::array();
    for (const auto& t : con.terms) {
      json entries = json::array();
      for (const auto& e : t.entries) entries.push_back({e.row, e.col, e.value});
      terms.push_back({{"block", t.block}, {"entries", entries}});
    }
    cons.push_back({{"rhs", con.rhs}, {"terms", terms}});
  }
  doc["constraints"] = cons;
  out << doc.dump(1) << '\n';
}

const char* to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::kOptimal:
      return "optimal";
    case SdpStatus::kNearOptimal:
      return "near_optimal";
    case SdpStatus::kInfeasible:
      return "infeasible";
    case SdpStatus::kNumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

SdpSolution solve(const SdpProblem& problem, const SolverOptions& options) {
  problem.validate();
  const Compiled c = compile(problem);
  const auto& cmat = *c.objective;
  const int m = static_cast<int>(c.terms.size());
  const size_t nb = c.sizes.size();

  // Starting point in the style of SDPT3: scaled identities.
  Blocks x, s;
  for (size_t b = 0; b < nb; ++b) {
    const int n = c.sizes[b];
    const double rootn = std::sqrt(static_cast<double>(n));
    double xi = std::max(10.0, rootn);
    double eta = std::max({10.0, rootn, cmat[b].norm()});
    for (const auto& [i, t] : c.users[b]) {
      double na = 0.0;
      for (const auto& e : c.terms[i][t].full) na += e.value * e.value;
      na = std::sqrt(na);
      xi = std::max(xi, rootn * (1.0 + std::abs(c.rhs(i))) / (1.0 + na));
      eta = std::max(eta, na);
    }
    x.push_back(xi * RealMatrix::Identity(n, n));
    s.push_back(eta * RealMatrix::Identity(n, n));
  }
  RealVector y = RealVector::Zero(m);

  const double rhs_norm = c.rhs.norm();
  double c_norm = 0.0;
  for (const auto& cb : cmat) c_norm += cb.squaredNorm();
  c_norm = std::sqrt(c_norm);
  const double total = static_cast<double>(c.total_dim);

  SdpSolution sol;
  auto measure = [&](Progress& pr, RealVector& rp, Blocks& rd) {
    rp = c.rhs - apply_a(c, x);
    rd = apply_at(c, y);
    for (size_t b = 0; b < nb; ++b) rd[b] = cmat[b] - s[b] - rd[b];
    pr.pobj = inner(cmat, x);
    pr.dobj = c.rhs.dot(y);
    pr.pinf = rp.norm() / (1.0 + rhs_norm);
    pr.dinf = frobenius(rd) / (1.0 + c_norm);
    const double denom = 1.0 + std::abs(pr.pobj) + std::abs(pr.dobj);
    pr.gap = std::max(std::abs(pr.pobj - pr.dobj), std::abs(inner(x, s))) / denom;
  };

  Progress pr{};
  RealVector rp;
  Blocks rd;
  bool diverged = false;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    measure(pr, rp, rd);
    if (pr.worst() < options.tolerance) break;
    if (y.norm() > 1e12 || frobenius(x) > 1e12) {
      diverged = true;
      break;
    }

    Blocks sinv(nb), lx(nb), ls(nb);
    bool ok = true;
    for (size_t b = 0; b < nb; ++b) {
      lx[b] = inverse_cholesky(x[b]);
      ls[b] = inverse_cholesky(s[b]);
      if (lx[b].size() == 0 || ls[b].size() == 0) {
        ok = false;
        break;
      }
      sinv[b].noalias() = ls[b].transpose() * ls[b];
    }
    if (!ok) break;

    // Schur complement M_ij = <A_i, X A_j S^-1>, upper triangle only.
    RealMatrix schur = RealMatrix::Zero(m, m);
    for (size_t b = 0; b < nb; ++b) {
      const RealMatrix& xb = x[b];
      const RealMatrix& zb = sinv[b];
      const auto& users = c.users[b];
      std::vector<RealMatrix> g(users.size());
      for (size_t u = 0; u < users.size(); ++u) {
        const CompiledTerm& t = c.terms[users[u].first][users[u].second];
        if (t.dense) g[u].noalias() = xb * t.matrix * zb;
      }
      for (size_t uj = 0; uj < users.size(); ++uj) {
        const auto [j, tj] = users[uj];
        const CompiledTerm& aj = c.terms[j][tj];
        for (size_t ui = 0; ui < users.size(); ++ui) {
          const auto [i, ti] = users[ui];
          if (i > j) continue;
          const CompiledTerm& ai = c.terms[i][ti];
          double v = 0.0;
          if (aj.dense) {
            v = sparse_inner(*ai.entries, g[uj]);
          } else if (ai.dense) {
            // <A_i, X A_j Z> = <A_j, X A_i Z> by symmetry of the Schur complement.
            v = sparse_inner(*aj.entries, g[ui]);
          } else {
            for (const auto& p : ai.full)
              for (const auto& q : aj.full) v += p.value * q.value * xb(p.row, q.row) * zb(q.col, p.col);
          }
          schur(i, j) += v;
        }
      }
    }
    schur = schur.selfadjointView<Eigen::Upper>();
    Eigen::LLT<RealMatrix> schur_llt(schur);
    Eigen::LDLT<RealMatrix> schur_ldlt;
    const bool use_ldlt = schur_llt.info() != Eigen::Success;
    if (use_ldlt) {
      schur_ldlt.compute(schur);
      if (schur_ldlt.info() != Eigen::Success) break;
    }
    auto schur_solve = [&](const RealVector& r) -> RealVector {
      return use_ldlt ? RealVector(schur_ldlt.solve(r)) : RealVector(schur_llt.solve(r));
    };

    Blocks x_rd_sinv(nb);
    for (size_t b = 0; b < nb; ++b) x_rd_sinv[b] = x[b] * rd[b] * sinv[b];
    const RealVector base_rhs = rp + apply_a(c, x_rd_sinv);

    // Direction for a given hRc = Rc S^-1, where Rc is the complementarity target.
    auto direction = [&](const Blocks& hrc, Blocks& dx, RealVector& dy, Blocks& ds) {
      dy = schur_solve(base_rhs - apply_a(c, hrc));
      ds = apply_at(c, dy);
      for (size_t b = 0; b < nb; ++b) {
        ds[b] = rd[b] - ds[b];
        dx[b] = symmetrized(hrc[b] - x[b] * ds[b] * sinv[b]);
      }
    };

    const double mu = inner(x, s) / total;

    Blocks hrc(nb), dx(nb), ds(nb);
    RealVector dy;
    for (size_t b = 0; b < nb; ++b) hrc[b] = -x[b];
    direction(hrc, dx, dy, ds);
    const double ap_aff = std::min(1.0, max_step(lx, dx));
    const double ad_aff = std::min(1.0, max_step(ls, ds));
    double mu_aff = 0.0;
    for (size_t b = 0; b < nb; ++b) {
      mu_aff += (x[b] + ap_aff * dx[b]).cwiseProduct(s[b] + ad_aff * ds[b]).sum();
    }
    mu_aff /= total;
    const double expon = std::max(1.0, 3.0 * std::pow(std::min(ap_aff, ad_aff), 2));
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, expon), 0.0, 1.0);

    for (size_t b = 0; b < nb; ++b) {
      hrc[b] = sigma * mu * sinv[b] - x[b] - dx[b] * ds[b] * sinv[b];
    }
    Blocks dx2(nb), ds2(nb);
    RealVector dy2;
    direction(hrc, dx2, dy2, ds2);

    const double gamma = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
    const double ap = std::min(1.0, gamma * max_step(lx, dx2));
    const double ad = std::min(1.0, gamma * max_step(ls, ds2));
    if (ap < 1e-10 && ad < 1e-10) break;
    for (size_t b = 0; b < nb; ++b) {
      x[b] = symmetrized(x[b] + ap * dx2[b]);
      s[b] = symmetrized(s[b] + ad * ds2[b]);
    }
    y += ad * dy2;
  }
  measure(pr, rp, rd);

  sol.primal_objective = pr.pobj;
  sol.dual_objective = pr.dobj;
  sol.primal_infeasibility = pr.pinf;
  sol.dual_infeasibility = pr.dinf;
  sol.relative_gap = pr.gap;
  sol.iterations = iter;
  sol.x = std::move(x);
  sol.s = std::move(s);
  sol.y = std::move(y);
  if (pr.worst() < options.tolerance) {
    sol.status = SdpStatus::kOptimal;
  } else if (diverged) {
    sol.status = SdpStatus::kInfeasible;
  } else if (pr.worst() < options.near_optimal_tolerance) {
    sol.status = SdpStatus::kNearOptimal;
  } else {
    sol.status = SdpStatus::kNumericalFailure;
  }
  return sol;
}

RealMatrix embed_hermitian(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("embed_hermitian: matrix must be square");
  const auto n = h.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

ComplexMatrix unembed_hermitian(const RealMatrix& m) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw std::invalid_argument("unembed_hermitian: matrix must be square with even size");
  }
  const auto n = m.rows() / 2;
  const RealMatrix re = 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
  const RealMatrix im = 0.5 * (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n));
  ComplexMatrix out(n, n);
  out.real() = re;
  out.imag() = im;
  return out;
}

}  // namespace chanbound::sdp
