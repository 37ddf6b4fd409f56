// Copyright 2026 The Negotiation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the negotiate binary end to end.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("negotiate_cli_") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  Result run(const std::string& args) {
    const fs::path out = root_ / "stdout.txt", err = root_ / "stderr.txt";
    const std::string cmd = std::string(NEGOTIATE_BIN) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status), slurp(out), slurp(err)};
  }

  fs::path root_;
};

TEST_F(Cli, IdmTruthfulAndStrategic) {
  const Result a = run("idm --out-dir " + (root_ / "a").string());
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("settlement: (1.1410, 1.2884)"), std::string::npos) << a.out;
  const Result b = run("idm --p1 strategic --out-dir " + (root_ / "b").string());
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_NE(b.out.find("settlement: (1.7435, 1.2565)"), std::string::npos) << b.out;
  EXPECT_EQ(slurp(root_ / "a" / "idm_trace.csv").rfind("t,x1,x2,g1,g2,", 0), 0u);
}

TEST_F(Cli, MalformedScenarioExitsWithInputError) {
  const fs::path bad = root_ / "bad.txt";
  std::ofstream(bad) << "[domain]\nk = 10\n[party1]\na1 = one\n";
  const Result r = run("idm --scenario " + bad.string() + " --out-dir " + root_.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("party1.a1"), std::string::npos) << r.err;
}

TEST_F(Cli, NonConvergenceExitsWithNumericalFailure) {
  const Result r = run("idm --max-iter 2 --out-dir " + root_.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(fs::exists(root_ / "idm_trace.csv"));
}

TEST_F(Cli, BadFlagsAreInputErrors) {
  EXPECT_EQ(run("nin --trials 0 --out-dir " + root_.string()).code, 2);
  EXPECT_EQ(run("mre-sweep --M-range 5:2 --out-dir " + root_.string()).code, 2);
  EXPECT_EQ(run("idm --p1 sneaky").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("idm --tol 0 --out-dir " + root_.string()).code, 2);
}

TEST_F(Cli, PayoffReport) {
  const Result r = run("payoff --out-dir " + root_.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("(8.2290, 4.9767)"), std::string::npos);
  EXPECT_NE(r.out.find("(8.0642, 4.9368)"), std::string::npos);
  EXPECT_NE(r.out.find("dominant strategy solution: (p1 strategic, p2 strategic)"),
            std::string::npos);
  EXPECT_NE(r.out.find("Prisoner's-Dilemma structure: yes"), std::string::npos);
  const std::string csv = slurp(root_ / "payoff.csv");
  EXPECT_NE(csv.find("strategic,strategic,8.064"), std::string::npos) << csv;
}

TEST_F(Cli, PayoffTruthfulOnlyProfile) {
  const Result r = run("payoff --gamma1 4 --gamma2 2.3333333333333335 --out-dir " + root_.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("no strategic spread"), std::string::npos) << r.out;
}

TEST_F(Cli, NinTrajectoriesEndClose) {
  const Result r = run("nin --M 5 --trials 10 --seed 7 --out-dir " + root_.string());
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(slurp(root_ / "nin_trials.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "trial,M,settlement_x1,settlement_x2,rel_error,rounds");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream row(line);
    std::string field;
    for (int i = 0; i < 5; ++i) std::getline(row, field, ',');
    EXPECT_LT(std::stod(field), 0.05) << line;
  }
  EXPECT_EQ(rows, 10);
}

TEST_F(Cli, SweepSingleTrialLeavesStderrEmpty) {
  const Result r = run("mre-sweep --M-range 3 --trials 1 --out-dir " + root_.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(root_ / "mre_sweep.csv");
  std::istringstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header, "M,mre,stderr,n,seed");
  EXPECT_NE(row.find(",,1,0"), std::string::npos) << row;
  EXPECT_TRUE(fs::exists(root_ / "mre_hist_M3.csv"));
}

TEST_F(Cli, AttackReport) {
  const Result r = run("attack --out-dir " + root_.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("recovered beta2: 2.333333"), std::string::npos) << r.out;
  EXPECT_NE(slurp(root_ / "attack_report.txt").find("payoff lift: 0.1"), std::string::npos);
}

TEST_F(Cli, ManifestListsEveryOutput) {
  const Result r = run("mre-sweep --M-range 1:3 --trials 20 --out-dir " + root_.string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest = nlohmann::json::parse(slurp(root_ / "manifest.json"));
  EXPECT_EQ(manifest["command"], "mre-sweep");
  EXPECT_EQ(manifest["scenario"], "paper-triangle");
  EXPECT_EQ(manifest["config"]["trials"], 20);
  ASSERT_EQ(manifest["outputs"].size(), 4u);
  for (const auto& name : manifest["outputs"]) {
    const std::string body = slurp(root_ / name.get<std::string>());
    EXPECT_FALSE(body.empty()) << name;
    EXPECT_EQ(body.back(), '\n');
  }
}

}  // namespace
