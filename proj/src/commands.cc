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


#include "chanbound/commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "chanbound/applications.h"
#include "chanbound/bounds.h"
#include "chanbound/optimizer.h"
#include "chanbound/problem_io.h"
#include "chanbound/sdp_core.h"
#include "chanbound/verify.h"
#include "json.hpp"

namespace chanbound {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(long x) { return std::to_string(x); }
std::string fmt(int x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "1" : "0"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Runs body(i) for i in [0, count) on up to `jobs` threads. Results land in
// index order; the lowest-index exception is rethrown.
template <typename T>
std::vector<T> parallel_map(int count, int jobs, const std::function<T(int)>& body) {
  std::vector<T> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        results[i] = body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp(jobs, 1, std::max(count, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void check_jobs(int jobs) {
  if (jobs < 1) throw std::invalid_argument("--jobs must be at least 1");
}

void check_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("--tol must be positive");
}

std::string status_of(const OptimizationReport& r) {
  std::vector<std::string> notes = r.warnings;
  int failed = 0;
  for (const auto& c : r.candidates) {
    if (!c.ok && c.note.find("solver") != std::string::npos) ++failed;
  }
  if (failed > 0) notes.push_back(std::to_string(failed) + " k candidates hit solver failures");
  return notes.empty() ? "ok" : join(notes, "; ");
}

// Columns shared by the weighted-norm sweeps: the k = floor(n/2)
// bound, the optimal-k bound and its parameters.
const std::vector<std::string> kWeightedColumns = {
    "half_k[count]",   "half_k_alpha0[1]", "half_k_alpha1[1]", "half_k_bound[prob]", "k_star[count]",
    "alpha0_star[1]", "alpha1_star[1]",   "optimal_bound[prob]", "evaluations[count]", "status"};

std::vector<std::string> weighted_cells(const OptimizationReport& half, const OptimizationReport& best) {
  half.bound.validate();
  best.bound.validate();
  return {fmt(half.k),          fmt(half.alpha0),          fmt(half.alpha1),
          fmt(half.bound.value), fmt(best.k),              fmt(best.alpha0),
          fmt(best.alpha1),     fmt(best.bound.value),     fmt(best.evaluations + half.evaluations),
          status_of(best)};
}

OptimizerOptions optimizer_options(double tolerance, int jobs) {
  OptimizerOptions o;
  o.tolerance = tolerance;
  o.jobs = jobs;
  return o;
}

OptimizationReport with_fixed_k(const std::function<OptimizationReport(const OptimizerOptions&)>& run,
                                OptimizerOptions o, int k) {
  o.fixed_k = k;
  o.k_min = 0;
  return run(o);
}

std::vector<std::string> two_adc_row(const TwoAdcInstance& inst, int n, const WeightedNorms& norms,
                                     const OptimizerOptions& opts, int* k_star) {
  const BoundResult t3 = two_adc_bures_bound(inst, n);
  t3.validate();
  auto run = [&](const OptimizerOptions& o) { return optimize_theorem4(inst.p0, inst.p1, norms, n, o); };
  const OptimizationReport best = run(opts);
  const OptimizationReport half = with_fixed_k(run, opts, n / 2);
  if (k_star) *k_star = best.k;
  std::vector<std::string> row = {fmt(t3.value), flag(t3.applicable)};
  for (auto& c : weighted_cells(half, best)) row.push_back(std::move(c));
  return row;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::string CsvTable::render() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_field(cells[i]);
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) {
    if (r.size() != header.size()) throw std::logic_error("CsvTable: row width differs from header");
    line(r);
  }
  return out;
}

std::vector<double> SweepRange::points() const {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step)) {
    throw std::invalid_argument("sweep range must be finite");
  }
  if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");
  if (stop < start) throw std::invalid_argument("sweep stop is below start");
  const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw std::invalid_argument("sweep range has too many points");
  std::vector<double> out;
  // Multiply rather than accumulate so the grid does not drift; round to 12
  // significant digits so 0.1 prints as 0.1.
  for (long i = 0; i < count; ++i) out.push_back(std::stod(fmt(start + static_cast<double>(i) * step)));
  return out;
}

CsvTable fig_two_adc_r0(const TwoAdcR0Args& args) {
  check_jobs(args.jobs);
  check_tolerance(args.tolerance);
  if (args.n < 1) throw std::invalid_argument("--n must be at least 1");
  const std::vector<double> r0s = args.r0.points();
  for (double r0 : r0s) TwoAdcInstance{args.p0, 1.0 - args.p0, r0, r0 + args.gap}.validate();
  CsvTable t;
  t.header = concat({"r0[prob]", "r1[prob]", "n[count]", "theorem3_bound[prob]", "theorem3_applicable[flag]"},
                    kWeightedColumns);
  // Points are independent; the optimal k moves non-monotonically with r0, so
  // no k range is carried between points.
  const OptimizerOptions opts = optimizer_options(args.tolerance, 1);
  t.rows = parallel_map<std::vector<std::string>>(static_cast<int>(r0s.size()), args.jobs, [&](int i) {
    const TwoAdcInstance inst{args.p0, 1.0 - args.p0, r0s[i], std::stod(fmt(r0s[i] + args.gap))};
    const WeightedNorms norms = two_adc_norms(inst);
    return concat({fmt(inst.r0), fmt(inst.r1), fmt(args.n)}, two_adc_row(inst, args.n, norms, opts, nullptr));
  });
  return t;
}

CsvTable fig_two_adc_n(const TwoAdcNArgs& args) {
  check_jobs(args.jobs);
  check_tolerance(args.tolerance);
  if (args.n_min < 1 || args.n_max < args.n_min) throw std::invalid_argument("need 1 <= n-min <= n-max");
  const TwoAdcInstance inst{args.p0, 1.0 - args.p0, args.r0, args.r1};
  inst.validate();
  const WeightedNorms norms = two_adc_norms(inst);
  CsvTable t;
  t.header = concat({"n[count]", "r0[prob]", "r1[prob]", "theorem3_bound[prob]", "theorem3_applicable[flag]"},
                    kWeightedColumns);
  OptimizerOptions opts = optimizer_options(args.tolerance, args.jobs);
  for (int n = args.n_min; n <= args.n_max; ++n) {
    int k_star = 0;
    t.rows.push_back(concat({fmt(n), fmt(inst.r0), fmt(inst.r1)}, two_adc_row(inst, n, norms, opts, &k_star)));
    if (args.warm_start) opts.k_min = k_star;
  }
  return t;
}

CsvTable fig_cpf(const CpfArgs& args) {
  check_jobs(args.jobs);
  check_tolerance(args.tolerance);
  if (args.ell < 2) throw std::invalid_argument("--ell must be at least 2");
  const double p_err0 = 1.0 - 1.0 / args.ell;
  const OptimizerOptions opts = optimizer_options(args.tolerance, 1);
  auto cells = [&](const WeightedNorms& norms, int n) {
    auto run = [&](const OptimizerOptions& o) { return optimize_theorem2(p_err0, norms, n, o); };
    return weighted_cells(with_fixed_k(run, opts, n / 2), run(opts));
  };
  CsvTable t;
  if (args.mode == "sweep_n") {
    if (args.n_min < 0 || args.n_max < args.n_min) throw std::invalid_argument("need 0 <= n-min <= n-max");
    const CpfInstance inst{args.ell, args.r0, args.r1};
    inst.validate();
    const WeightedNorms norms = cpf_norms(inst);
    t.header = concat({"n[count]", "r0[prob]", "r1[prob]"}, kWeightedColumns);
    t.rows = parallel_map<std::vector<std::string>>(args.n_max - args.n_min + 1, args.jobs, [&](int i) {
      const int n = args.n_min + i;
      return concat({fmt(n), fmt(inst.r0), fmt(inst.r1)}, cells(norms, n));
    });
  } else if (args.mode == "sweep_r0") {
    if (args.n < 0) throw std::invalid_argument("--n must be non-negative");
    const std::vector<double> r0s = args.r0_range.points();
    for (double r0 : r0s) CpfInstance{args.ell, r0, r0 + args.gap}.validate();
    t.header = concat({"r0[prob]", "r1[prob]", "n[count]"}, kWeightedColumns);
    t.rows = parallel_map<std::vector<std::string>>(static_cast<int>(r0s.size()), args.jobs, [&](int i) {
      const CpfInstance inst{args.ell, r0s[i], std::stod(fmt(r0s[i] + args.gap))};
      return concat({fmt(inst.r0), fmt(inst.r1), fmt(args.n)}, cells(cpf_norms(inst), args.n));
    });
  } else {
    throw std::invalid_argument("--mode must be sweep_n or sweep_r0");
  }
  return t;
}

CsvTable grover_table(const GroverArgs& args) {
  const GroverInstance inst{args.N, args.k};
  inst.validate();
  if (args.n_min < 0) throw std::invalid_argument("--n-min must be non-negative");
  int n_max = args.n_max.value_or(-1);
  if (!args.n_max) {
    n_max = 0;
    while (grover_bound(inst, n_max + 1).applicable) ++n_max;
  }
  if (n_max < args.n_min) throw std::invalid_argument("--n-max is below --n-min");
  CsvTable t;
  t.header = {"n[count]", "lower_bound[prob]", "grover_success[prob]", "gap[prob]", "applicable[flag]"};
  for (int n = args.n_min; n <= n_max; ++n) {
    const BoundResult b = grover_bound(inst, n);
    b.validate();
    if (b.applicable) {
      const double success = grover_success(inst, n);
      t.rows.push_back({fmt(n), fmt(b.value), fmt(success), fmt(std::abs(b.value + success - 1.0)), "1"});
    } else {
      t.rows.push_back({fmt(n), fmt(b.value), "", "", "0"});
    }
  }
  return t;
}

namespace {

json bound_to_json(const BoundResult& b) {
  b.validate();
  return {{"theorem", to_string(b.kind)},
          {"value", b.value},
          {"applicable", b.applicable},
          {"params",
           {{"m", b.params.m},
            {"k", b.params.k},
            {"alpha0", b.params.alpha0},
            {"alpha1", b.params.alpha1},
            {"reference", b.params.reference}}},
          {"diagnostics", b.diagnostics}};
}

json report_to_json(const OptimizationReport& r) {
  json candidates = json::array();
  for (const auto& c : r.candidates) {
    candidates.push_back(
        {{"k", c.k}, {"ok", c.ok}, {"value", c.value}, {"alpha0", c.alpha0}, {"alpha1", c.alpha1}, {"note", c.note}});
  }
  return {{"best_value", r.best_value}, {"k", r.k},           {"alpha0", r.alpha0},        {"alpha1", r.alpha1},
          {"evaluations", r.evaluations}, {"warnings", r.warnings}, {"candidates", candidates}};
}

const KrausChannel& unitary_or_throw(const KrausChannel& ch, int index) {
  if (ch.kraus().size() != 1 || ch.dim_in() != ch.dim_out() || !is_unitary(ch.kraus()[0])) {
    throw SpecError("channels[" + std::to_string(index) + "]: C1 needs a unitary channel (one unitary Kraus operator)");
  }
  return ch;
}

KrausChannel reference_of(const ProblemSpec& spec) {
  if (spec.reference) return *spec.reference;
  const KrausChannel& first = spec.problem.channel(0);
  if (first.dim_in() != first.dim_out()) {
    throw SpecError("reference_channel: required when input and output dimensions differ");
  }
  return KrausChannel::identity(first.dim_in());
}

double require(const std::optional<double>& v, const char* name) {
  if (!v) throw std::invalid_argument(std::string(name) + " is required unless --optimize is given");
  return *v;
}

}  // namespace

std::string bound_json(const BoundArgs& args) {
  check_jobs(args.jobs);
  check_tolerance(args.tolerance);
  if (args.n < 0) throw std::invalid_argument("--n must be non-negative");
  if (args.m < 0 || args.m > args.n) throw std::invalid_argument("--m must lie in [0, n]");
  const ProblemSpec spec = load_problem_spec(args.spec_path);
  const DiscriminationProblem& problem = spec.problem;
  json doc;
  json quantities = json::object();
  json inputs = {{"spec", args.spec_path}, {"n", args.n}, {"m", args.m}, {"channels", problem.size()},
                 {"kinds", spec.kinds}};
  std::vector<double> priors;
  for (int i = 0; i < problem.size(); ++i) priors.push_back(problem.prior(i));
  inputs["priors"] = priors;

  auto p_err_m = [&] {
    if (args.m == 0) return args.p_err_m.value_or(p_err_zero(problem));
    if (!args.p_err_m) throw std::invalid_argument("--p-err-m is required when --m > 0");
    return *args.p_err_m;
  };
  auto two_channels = [&] {
    if (problem.size() != 2 || problem.groups().size() != 2) {
      throw SpecError("channels: " + args.theorem + " needs exactly two channels in separate groups");
    }
  };
  OptimizerOptions opts = optimizer_options(args.tolerance, args.jobs);
  if (args.k) opts.fixed_k = *args.k;

  BoundResult result;
  const std::string& th = args.theorem;
  if (th == "T1") {
    const KrausChannel ref = reference_of(spec);
    std::vector<std::pair<double, StinespringIsometry>> isos;
    for (const auto& [p, ch] : problem.oracles()) isos.emplace_back(p, stinespring_from_kraus(ch));
    const ChannelSdpResult s = min_avg_trace_norm_sdp(isos, stinespring_from_kraus(ref));
    const double theta_a = std::acos(std::clamp(certified_value(s, "theta_a"), 0.0, 1.0));
    const double lb = p_err_m();
    quantities = {{"theta_a", theta_a}, {"p_err_m", lb}, {"sdp_iterations", s.iterations}};
    result = theorem1_bound(args.n, args.m, theta_a, lb);
    result.params.reference = spec.reference ? "reference_channel" : "identity";
  } else if (th == "T2") {
    const KrausChannel ref = reference_of(spec);
    if (args.optimize) {
      if (args.m != 0) throw std::invalid_argument("--optimize supports only --m 0");
      const OptimizationReport r = optimize_theorem2(problem, ref, args.n, opts);
      doc["optimizer"] = report_to_json(r);
      result = r.bound;
    } else {
      if (!args.k) throw std::invalid_argument("--k is required unless --optimize is given");
      const double a0 = require(args.alpha0, "--alpha0");
      const double a1 = require(args.alpha1, "--alpha1");
      const WeightedNorms norms = reference_norms(problem, ref);
      const double th0 = norms.first(a0);
      const double th1 = norms.second(a1);
      const double lb = p_err_m();
      quantities = {{"theta_d0", th0}, {"theta_d1", th1}, {"p_err_m", lb}};
      result = theorem2_bound(args.n, args.m, *args.k, a0, a1, th0, th1, lb);
    }
    result.params.reference = spec.reference ? "reference_channel" : "identity";
  } else if (th == "T3") {
    two_channels();
    const ChannelSdpResult s =
        min_trace_norm_sdp(stinespring_from_kraus(problem.channel(0)), stinespring_from_kraus(problem.channel(1)));
    const double tau_a = std::acos(std::clamp(certified_value(s, "tau_a"), 0.0, 1.0));
    quantities = {{"tau_a", tau_a}, {"sdp_iterations", s.iterations}};
    result = theorem3_bound(args.n, problem.prior(0), problem.prior(1), tau_a);
  } else if (th == "T4") {
    two_channels();
    const WeightedNorms norms = channel_pair_norms(problem.channel(0), problem.channel(1));
    if (args.optimize) {
      const OptimizationReport r = optimize_theorem4(problem.prior(0), problem.prior(1), norms, args.n, opts);
      doc["optimizer"] = report_to_json(r);
      result = r.bound;
    } else {
      if (!args.k) throw std::invalid_argument("--k is required unless --optimize is given");
      const double a0 = require(args.alpha0, "--alpha0");
      const double a1 = require(args.alpha1, "--alpha1");
      const double t0 = norms.first(a0);
      const double t1 = norms.second(a1);
      quantities = {{"tau_d0", t0}, {"tau_d1", t1}};
      result = theorem4_bound(args.n, *args.k, problem.prior(0), problem.prior(1), a0, a1, t0, t1);
    }
  } else if (th == "C1") {
    two_channels();
    const ComplexMatrix& u0 = unitary_or_throw(problem.channel(0), 0).kraus()[0];
    const ComplexMatrix& u1 = unitary_or_throw(problem.channel(1), 1).kraus()[0];
    const std::vector<double> phases = relative_eigenphases(u0, u1);
    quantities = {{"relative_eigenphases", phases}, {"covering_angle", covering_angle(phases)}};
    result = unitary_exact_error(args.n, problem.prior(0), problem.prior(1), u0, u1);
  } else {
    throw std::invalid_argument("--theorem must be one of T1, T2, T3, T4, C1");
  }
  json b = bound_to_json(result);
  for (auto it = b.begin(); it != b.end(); ++it) doc[it.key()] = it.value();
  doc["inputs"] = inputs;
  doc["quantities"] = quantities;
  return doc.dump(2) + "\n";
}

bool run_verify(const VerifyArgs& args, std::ostream& out) {
  bool all = true;
  for (const CheckResult& c : run_verify_suite(args.suite, args.seed, args.tolerance, args.instances)) {
    char line[256];
    std::snprintf(line, sizeof line, "%s %-34s cases=%-5d max_violation=%.3e tol=%.1e time=%.2fs",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.cases, c.max_violation, c.tolerance, c.seconds);
    out << line;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
    all = all && c.passed;
  }
  out << (all ? "verify: all checks passed" : "verify: FAILED") << '\n';
  return all;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds on the error of adaptive quantum channel discrimination", "chanbound"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  std::string out_path;
  int jobs = 1;
  std::uint64_t seed = 0;
  double tol = 0.0;
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_option("--tol", tol, "Optimizer tolerance (default 1e-6), or the sandwich tolerance for verify (default 5e-4)")
      ->check(CLI::PositiveNumber)
      ->default_str("");

  TwoAdcR0Args r0_args;
  auto* r0_cmd = app.add_subcommand("fig-two-adc-r0", "Two damping channels: bounds versus r0 at fixed n");
  r0_cmd->add_option("--r0-start", r0_args.r0.start, "First r0");
  r0_cmd->add_option("--r0-stop", r0_args.r0.stop, "Last r0 (inclusive)");
  r0_cmd->add_option("--r0-step", r0_args.r0.step, "r0 increment");
  r0_cmd->add_option("--gap", r0_args.gap, "r1 - r0");
  r0_cmd->add_option("--n", r0_args.n, "Number of queries");
  r0_cmd->add_option("--p0", r0_args.p0, "Prior of the first channel");

  TwoAdcNArgs n_args;
  auto* n_cmd = app.add_subcommand("fig-two-adc-n", "Two damping channels: bounds versus n");
  n_cmd->add_option("--n-min", n_args.n_min, "First query count");
  n_cmd->add_option("--n-max", n_args.n_max, "Last query count");
  n_cmd->add_option("--r0", n_args.r0, "Damping rate of the first channel");
  n_cmd->add_option("--r1", n_args.r1, "Damping rate of the second channel");
  n_cmd->add_option("--p0", n_args.p0, "Prior of the first channel");
  bool full_k = false;
  n_cmd->add_flag("--full-k", full_k, "Search every k at each n instead of starting from the previous optimum");

  CpfArgs cpf_args;
  auto* cpf_cmd = app.add_subcommand("fig-cpf", "Channel position finding: bounds versus n or r0");
  cpf_cmd->add_option("--mode", cpf_args.mode, "Sweep over n or over r0")->check(CLI::IsMember({"sweep_n", "sweep_r0"}));
  cpf_cmd->add_option("--ell", cpf_args.ell, "Number of positions");
  cpf_cmd->add_option("--n-min", cpf_args.n_min, "First query count for sweep_n");
  cpf_cmd->add_option("--n-max", cpf_args.n_max, "Last query count for sweep_n");
  cpf_cmd->add_option("--r0", cpf_args.r0, "Background damping rate for sweep_n");
  cpf_cmd->add_option("--r1", cpf_args.r1, "Damping rate of the marked line for sweep_n");
  cpf_cmd->add_option("--n", cpf_args.n, "Number of queries for sweep_r0");
  cpf_cmd->add_option("--r0-start", cpf_args.r0_range.start, "First r0 for sweep_r0");
  cpf_cmd->add_option("--r0-stop", cpf_args.r0_range.stop, "Last r0 for sweep_r0 (inclusive)");
  cpf_cmd->add_option("--r0-step", cpf_args.r0_range.step, "r0 increment for sweep_r0");
  cpf_cmd->add_option("--gap", cpf_args.gap, "r1 - r0 for sweep_r0");

  GroverArgs g_args;
  int g_n_max = -1;
  auto* g_cmd = app.add_subcommand("grover", "Unstructured search: lower bound versus Grover success");
  g_cmd->add_option("--N", g_args.N, "Database size")->required();
  g_cmd->add_option("--k", g_args.k, "Number of marked items")->required();
  g_cmd->add_option("--n-min", g_args.n_min, "First query count");
  g_cmd->add_option("--n-max", g_n_max, "Defaults to the last n where the bound applies");

  BoundArgs b_args;
  double alpha0 = 0.0, alpha1 = 0.0, p_err_m = 0.0;
  int k = 0;
  auto* b_cmd = app.add_subcommand("bound", "Evaluate one bound on a problem file");
  b_cmd->add_option("--spec", b_args.spec_path, "Problem file (JSON)")->required();
  b_cmd->add_option("--theorem", b_args.theorem, "Which bound to evaluate")->required()->check(CLI::IsMember({"T1", "T2", "T3", "T4", "C1"}));
  b_cmd->add_option("--n", b_args.n, "Number of queries")->required();
  b_cmd->add_option("--m", b_args.m, "Queries covered by --p-err-m");
  auto* k_opt = b_cmd->add_option("--k", k, "Split point of the weighted bounds");
  auto* a0_opt = b_cmd->add_option("--alpha0", alpha0, "First weight");
  auto* a1_opt = b_cmd->add_option("--alpha1", alpha1, "Second weight");
  auto* pm_opt = b_cmd->add_option("--p-err-m", p_err_m, "Lower bound on the error after m queries");
  b_cmd->add_flag("--optimize", b_args.optimize, "Optimize k and the weights");

  VerifyArgs v_args;
  auto* v_cmd = app.add_subcommand("verify", "Cross-check the programs against brute-force search");
  v_cmd->add_option("--suite", v_args.suite, "Which checks to run")->check(CLI::IsMember({"all", "sandwich", "properties", "closed-forms"}));
  v_cmd->add_option("--instances", v_args.instances, "Random instances per sandwich check")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const bool has_tol = app.count("--tol") > 0;

  try {
    std::string text;
    int status = kExitOk;
    if (*r0_cmd) {
      r0_args.jobs = jobs;
      if (has_tol) r0_args.tolerance = tol;
      text = fig_two_adc_r0(r0_args).render();
    } else if (*n_cmd) {
      n_args.jobs = jobs;
      n_args.warm_start = !full_k;
      if (has_tol) n_args.tolerance = tol;
      text = fig_two_adc_n(n_args).render();
    } else if (*cpf_cmd) {
      cpf_args.jobs = jobs;
      if (has_tol) cpf_args.tolerance = tol;
      text = fig_cpf(cpf_args).render();
    } else if (*g_cmd) {
      if (g_n_max >= 0) g_args.n_max = g_n_max;
      text = grover_table(g_args).render();
    } else if (*b_cmd) {
      b_args.jobs = jobs;
      if (has_tol) b_args.tolerance = tol;
      if (*k_opt) b_args.k = k;
      if (*a0_opt) b_args.alpha0 = alpha0;
      if (*a1_opt) b_args.alpha1 = alpha1;
      if (*pm_opt) b_args.p_err_m = p_err_m;
      text = bound_json(b_args);
    } else if (*v_cmd) {
      v_args.seed = seed;
      if (has_tol) v_args.tolerance = tol;
      std::ostringstream report;
      status = run_verify(v_args, report) ? kExitOk : kExitCheckFailed;
      text = report.str();
    }
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << out_path << " for writing\n";
        return kExitUsage;
      }
      file << text;
    }
    return status;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace chanbound
