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


#include "chanbound/problem_io.h"

#include <fstream>
#include <sstream>

#include "chanbound/applications.h"
#include "json.hpp"

namespace chanbound {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw SpecError(path + ": " + what); }

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

const json& field(const json& obj, const char* name, const std::string& path) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(path, std::string("missing field \"") + name + "\"");
  return *it;
}

Complex complex_entry(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (!j.is_array() || j.size() != 2) fail(path, "expected a number or an [re, im] pair");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

ComplexMatrix matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of rows");
  const auto rows = j.size();
  size_t cols = 0;
  for (size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty()) fail(rp, "expected a non-empty row");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) fail(rp, "rows have different lengths");
  }
  ComplexMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c)
      m(r, c) = complex_entry(j[r][c], path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return m;
}

KrausChannel channel(const json& j, const std::string& path, std::string& kind) {
  if (!j.is_object()) fail(path, "expected an object");
  try {
    if (j.contains("kraus")) {
      kind = "kraus";
      const json& list = j["kraus"];
      const std::string kp = path + ".kraus";
      if (!list.is_array() || list.empty()) fail(kp, "expected a non-empty list of matrices");
      std::vector<ComplexMatrix> ops;
      for (size_t i = 0; i < list.size(); ++i) {
        const std::string op = kp + "[" + std::to_string(i) + "]";
        ops.push_back(matrix(list[i], op));
        if (i > 0 && (ops[i].rows() != ops[0].rows() || ops[i].cols() != ops[0].cols())) {
          fail(op, "Kraus operators have different shapes");
        }
      }
      const int out = static_cast<int>(ops[0].rows());
      const int in = static_cast<int>(ops[0].cols());
      return KrausChannel(in, out, std::move(ops));
    }
    const json& kind_field = field(j, "kind", path);
    if (!kind_field.is_string()) fail(path + ".kind", "expected a string");
    kind = kind_field.get<std::string>();
    if (kind == "amplitude_damping") {
      const double r = number(field(j, "r", path), path + ".r");
      if (r < 0.0 || r > 1.0) fail(path + ".r", "damping rate must lie in [0, 1]");
      return adc_channel(r);
    }
    if (kind == "grover_oracle") {
      const int n = integer(field(j, "N", path), path + ".N");
      if (n < 1) fail(path + ".N", "must be positive");
      const json& marked = field(j, "marked", path);
      if (!marked.is_array()) fail(path + ".marked", "expected a list of item indices");
      std::vector<int> items;
      for (size_t i = 0; i < marked.size(); ++i) {
        const std::string mp = path + ".marked[" + std::to_string(i) + "]";
        const int item = integer(marked[i], mp);
        if (item < 0 || item >= n) fail(mp, "item index out of range");
        items.push_back(item);
      }
      return grover_oracle_channel(n, items);
    }
    fail(path + ".kind", "unknown channel kind \"" + kind + "\"");
  } catch (const SpecError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

}  // namespace

ProblemSpec parse_problem_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // The library message carries the line and column.
    throw SpecError(std::string("parse error: ") + e.what());
  }
  if (!doc.is_object()) fail("(root)", "expected an object");
  const json& channels = field(doc, "channels", "(root)");
  if (!channels.is_array() || channels.empty()) fail("channels", "expected a non-empty list");
  std::vector<KrausChannel> chans;
  std::vector<std::string> kinds;
  for (size_t i = 0; i < channels.size(); ++i) {
    std::string kind;
    chans.push_back(channel(channels[i], "channels[" + std::to_string(i) + "]", kind));
    kinds.push_back(kind);
    if (i > 0 && (chans[i].dim_in() != chans[0].dim_in() || chans[i].dim_out() != chans[0].dim_out())) {
      fail("channels[" + std::to_string(i) + "]", "acts on different spaces than channels[0]");
    }
  }
  const json& priors = field(doc, "priors", "(root)");
  if (!priors.is_array() || priors.size() != chans.size()) fail("priors", "expected one prior per channel");
  std::vector<std::pair<double, KrausChannel>> oracles;
  double sum = 0.0;
  for (size_t i = 0; i < chans.size(); ++i) {
    const std::string pp = "priors[" + std::to_string(i) + "]";
    const double p = number(priors[i], pp);
    if (p < 0.0) fail(pp, "must be non-negative");
    sum += p;
    oracles.emplace_back(p, chans[i]);
  }
  if (std::abs(sum - 1.0) > 1e-12) fail("priors", "must sum to 1 (sum is " + std::to_string(sum) + ")");

  std::vector<std::vector<int>> groups;
  if (doc.contains("groups")) {
    const json& g = doc["groups"];
    if (!g.is_array()) fail("groups", "expected a list of index lists");
    for (size_t i = 0; i < g.size(); ++i) {
      const std::string gp = "groups[" + std::to_string(i) + "]";
      if (!g[i].is_array()) fail(gp, "expected a list of channel indices");
      std::vector<int> members;
      for (size_t j = 0; j < g[i].size(); ++j) {
        const std::string ep = gp + "[" + std::to_string(j) + "]";
        const int idx = integer(g[i][j], ep);
        if (idx < 0 || idx >= static_cast<int>(chans.size())) fail(ep, "channel index out of range");
        members.push_back(idx);
      }
      groups.push_back(std::move(members));
    }
  } else {
    for (size_t i = 0; i < chans.size(); ++i) groups.push_back({static_cast<int>(i)});
  }

  std::optional<KrausChannel> reference;
  if (doc.contains("reference_channel")) {
    std::string kind;
    reference = channel(doc["reference_channel"], "reference_channel", kind);
    if (reference->dim_in() != chans[0].dim_in() || reference->dim_out() != chans[0].dim_out()) {
      fail("reference_channel", "acts on different spaces than the oracles");
    }
  }
  return {DiscriminationProblem(std::move(oracles), std::move(groups)), std::move(reference), std::move(kinds)};
}

ProblemSpec load_problem_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_spec(buf.str());
}

}  // namespace chanbound
