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

#include <gtest/gtest.h>
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "chanbound/applications.h"

namespace chanbound {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "chanbound");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> result;
  std::stringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) result.push_back(cell);
  return result;
}

std::string problem(const char* name) { return std::string(CHANBOUND_SOURCE_DIR) + "/problems/" + name; }

TEST(Cli, GroverTable) {
  const CliRun r = run({"grover", "--N", "4", "--k", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], "0,0.75,0.25,0,1");
  EXPECT_EQ(rows[2], "1,0,1,0,1");
}

TEST(Cli, BoundT3MatchesLibrary) {
  const CliRun r = run({"bound", "--spec", problem("two_adc.json"), "--theorem", "T3", "--n", "90"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["theorem"], "T3");
  EXPECT_TRUE(doc["applicable"].get<bool>());
  const double closed = two_adc_bures_bound(TwoAdcInstance{}, 90).value;
  EXPECT_NEAR(doc["value"].get<double>(), closed, 1e-4);
  EXPECT_LE(doc["value"].get<double>(), closed + 1e-12);
}

TEST(Cli, UnitaryExactError) {
  const CliRun r = run({"bound", "--spec", problem("unitary_pair.json"), "--theorem", "C1", "--n", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["value"].get<double>(), 0.4252809, 1e-6);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"bound", "--spec", problem("two_adc.json"), "--theorem", "T9"}).code, kExitUsage);
  EXPECT_EQ(run({"no-such-command"}).code, kExitUsage);
  EXPECT_EQ(run({"grover", "--N", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"fig-cpf", "--mode", "sideways"}).code, kExitUsage);
  EXPECT_EQ(run({"bound", "--spec", "/nonexistent.json", "--theorem", "T3", "--n", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, MalformedPriorsExitUsage) {
  const auto path = std::filesystem::temp_directory_path() / "chanbound_bad_priors.json";
  std::ofstream(path) << R"({"channels": [{"kind": "amplitude_damping", "r": 0.1},
                                          {"kind": "amplitude_damping", "r": 0.2}], "priors": [0.5]})";
  const CliRun r = run({"bound", "--spec", path.string(), "--theorem", "T3", "--n", "1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("priors: expected one prior per channel"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, CpfAnchors) {
  // No queries, or identical channels: the error is the one-shot guess error 2/3.
  const CliRun a = run({"fig-cpf", "--n-min", "0", "--n-max", "0"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_NEAR(std::stod(cells(lines(a.out)[1])[10]), 2.0 / 3.0, 1e-9);

  const CliRun b = run({"fig-cpf", "--mode", "sweep_r0", "--r0-start", "0.1", "--r0-stop", "0.1", "--gap", "0",
                        "--n", "3"});
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NEAR(std::stod(cells(lines(b.out)[1])[10]), 2.0 / 3.0, 1e-6);
}

TEST(Cli, TwoAdcSweepShapeAndDeterminism) {
  const std::vector<std::string> args = {"fig-two-adc-n", "--n-max", "4", "--jobs", "2"};
  const CliRun first = run(args);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const auto rows = lines(first.out);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = cells(rows[i]);
    EXPECT_EQ(c[0], std::to_string(i));
    // Optimal trace bound dominates both the half-split one and the Bures one.
    EXPECT_GE(std::stod(c[12]), std::stod(c[8]) - 1e-12);
    EXPECT_GT(std::stod(c[12]), std::stod(c[3]));
    EXPECT_EQ(c.back(), "ok");
  }
  EXPECT_EQ(run(args).out, first.out);
  EXPECT_EQ(run({"fig-two-adc-n", "--n-max", "4", "--jobs", "1"}).out, first.out);
}

TEST(Cli, R0SweepParallelMatchesSerial) {
  const std::vector<std::string> base = {"fig-two-adc-r0", "--r0-start", "0.1", "--r0-stop", "0.12", "--n", "6"};
  auto parallel = base;
  parallel.insert(parallel.end(), {"--jobs", "3"});
  const CliRun serial = run(base);
  ASSERT_EQ(serial.code, kExitOk) << serial.err;
  EXPECT_EQ(lines(serial.out).size(), 4u);
  EXPECT_EQ(run(parallel).out, serial.out);
}

TEST(Cli, VerifyFailsUnderImpossibleTolerance) {
  EXPECT_EQ(run({"verify", "--suite", "closed-forms"}).code, kExitOk);
  const CliRun r = run({"verify", "--suite", "sandwich", "--instances", "2", "--tol", "1e-14"});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos) << r.out;
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "chanbound_out.csv";
  const CliRun r = run({"--out", path.string(), "grover", "--N", "4", "--k", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), run({"grover", "--N", "4", "--k", "1"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, CsvQuoting) {
  CsvTable t{{"a", "b"}, {{"x,y", "say \"hi\""}, {"plain", ""}}};
  EXPECT_EQ(t.render(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\nplain,\n");
}

TEST(Cli, SweepRangeIsInclusive) {
  const auto pts = SweepRange{0.01, 0.85, 0.01}.points();
  ASSERT_EQ(pts.size(), 85u);
  EXPECT_EQ(pts.back(), 0.85);
  EXPECT_EQ(pts[9], 0.1);
}

TEST(Cli, StandaloneBinary) {
  const std::string cmd = std::string("\"") + CHANBOUND_CLI + "\" grover --N 4 --k 1 > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  const std::string bad = std::string("\"") + CHANBOUND_CLI + "\" bound --theorem T9 2> /dev/null";
  const int status = std::system(bad.c_str());
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitUsage);
}

}  // namespace
}  // namespace chanbound
