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


#ifndef CHANBOUND_COMMANDS_H_
#define CHANBOUND_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace chanbound {

/// A CSV table with a fixed header. Rendering follows RFC 4180 with LF line ends.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const;
};

/// Inclusive arithmetic range start, start + step, ..., <= stop.
struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
};

struct TwoAdcR0Args {
  SweepRange r0{0.01, 0.85, 0.01};
  double gap = 0.01;  // r1 = r0 + gap
  int n = 90;
  double p0 = 0.5;
  double tolerance = 1e-6;  // golden-section tolerance on the weights
  int jobs = 1;
};

struct TwoAdcNArgs {
  int n_min = 1;
  int n_max = 90;
  double r0 = 0.10;
  double r1 = 0.11;
  double p0 = 0.5;
  bool warm_start = true;  // restrict k to at least the previous optimum
  double tolerance = 1e-6;
  int jobs = 1;
};

struct CpfArgs {
  std::string mode = "sweep_n";  // sweep_n or sweep_r0
  int ell = 3;
  // sweep_n
  int n_min = 0;
  int n_max = 30;
  double r0 = 0.10;
  double r1 = 0.11;
  // sweep_r0
  int n = 15;
  SweepRange r0_range{0.01, 0.85, 0.01};
  double gap = 0.01;
  double tolerance = 1e-6;
  int jobs = 1;
};

struct GroverArgs {
  int N = 4;
  int k = 1;
  int n_min = 0;
  std::optional<int> n_max;  // defaults to the last query count where the bound applies
};

struct BoundArgs {
  std::string spec_path;
  std::string theorem;  // T1, T2, T3, T4 or C1
  int n = 1;
  int m = 0;
  std::optional<int> k;
  std::optional<double> alpha0;
  std::optional<double> alpha1;
  std::optional<double> p_err_m;
  bool optimize = false;
  double tolerance = 1e-6;
  int jobs = 1;
};

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  double tolerance = 5e-4;
  int instances = 25;
};

CsvTable fig_two_adc_r0(const TwoAdcR0Args& args);
CsvTable fig_two_adc_n(const TwoAdcNArgs& args);
CsvTable fig_cpf(const CpfArgs& args);
CsvTable grover_table(const GroverArgs& args);

/// Returns the JSON document printed by the `bound` command.
std::string bound_json(const BoundArgs& args);

/// Writes one line per check and returns true when every check passed.
bool run_verify(const VerifyArgs& args, std::ostream& out);

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitSolver = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chanbound

#endif  // CHANBOUND_COMMANDS_H_
