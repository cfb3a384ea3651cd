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


#ifndef CHANBOUND_PROBLEM_IO_H_
#define CHANBOUND_PROBLEM_IO_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chanbound/bounds.h"
#include "chanbound/qmat.h"

namespace chanbound {

/// Malformed problem file. The message starts with the location, either a
/// field path such as "channels[1].kraus[0]" or a line and column.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProblemSpec {
  DiscriminationProblem problem;
  std::optional<KrausChannel> reference;
  /// Per channel: "kraus", "amplitude_damping" or "grover_oracle".
  std::vector<std::string> kinds;
};

/// Parses the JSON problem format described in docs/problem-spec.md.
ProblemSpec parse_problem_spec(const std::string& text);
ProblemSpec load_problem_spec(const std::string& path);

}  // namespace chanbound

#endif  // CHANBOUND_PROBLEM_IO_H_
