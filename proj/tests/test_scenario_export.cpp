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

#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "negotiation/export.hpp"
#include "negotiation/scenario.hpp"

namespace negotiation {
namespace {

constexpr const char* kText = R"(# two-party fishing rights
label = custom
[domain]
k = 12
[party1]
a1 = 1
a3 = 2   # conservation weight
strategic_a3 = 1.5
[party2]
a2 = 1
a3 = 3
[start]
x1 = 4
x2 = 5
)";

TEST(Scenario, PresetValues) {
  const Scenario s = load_scenario("paper-triangle");
  EXPECT_EQ(s.domain.k(), 10.0);
  EXPECT_EQ(s.true1, UtilitySpec(1, 0, 4, 10));
  EXPECT_EQ(s.true2, UtilitySpec(0, 1, 7.0 / 3.0, 10));
  EXPECT_EQ(s.x0, (Point{5, 4}));
  EXPECT_EQ(s.strategic_gamma1, 7.0 / 3.0);
  EXPECT_EQ(s.strategic_gamma2, 1.5);
}

TEST(Scenario, ParsesSectionsAndComments) {
  const Scenario s = parse_scenario_text(kText);
  EXPECT_EQ(s.label, "custom");
  EXPECT_EQ(s.true1, UtilitySpec(1, 0, 2, 12));
  EXPECT_EQ(s.true2, UtilitySpec(0, 1, 3, 12));
  EXPECT_EQ(s.x0, (Point{4, 5}));
  EXPECT_EQ(s.strategic_gamma1, 1.5);
  EXPECT_FALSE(s.strategic_gamma2);
  EXPECT_DOUBLE_EQ(s.domain.interior_margin(), 12e-9);
}

TEST(Scenario, FormatRoundTrips) {
  for (const Scenario& s : {paper_scenario(), parse_scenario_text(kText)}) {
    const Scenario back = parse_scenario_text(format_scenario(s));
    EXPECT_EQ(back.label, s.label);
    EXPECT_EQ(back.true1, s.true1);
    EXPECT_EQ(back.true2, s.true2);
    EXPECT_EQ(back.x0, s.x0);
    EXPECT_EQ(back.strategic_gamma1, s.strategic_gamma1);
    EXPECT_EQ(back.strategic_gamma2, s.strategic_gamma2);
    EXPECT_EQ(back.domain.interior_margin(), s.domain.interior_margin());
  }
}

std::string error_key(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioParseError& e) {
    return e.key();
  }
  return "<no error>";
}

TEST(Scenario, DiagnosticsNameTheKey) {
  EXPECT_EQ(error_key("[domain]\nk = ten\n"), "domain.k");
  EXPECT_EQ(error_key("[domain]\nk = 10\nfoo = 1\n"), "domain.foo");
  EXPECT_EQ(error_key("[domain]\nk = 10\n[party1]\na1 = 1\n[party2]\na2 = 1\n[start]\nx1 = 5\n"),
            "start.x2");
  EXPECT_EQ(error_key("[party1]\na1 = 1\n"), "domain.k");
  EXPECT_EQ(error_key("[weather]\n"), "weather");
  EXPECT_EQ(error_key("[domain]\nk = 10\nk = 11\n"), "domain.k");
  EXPECT_EQ(error_key("[domain]\nk = 10\n[party1]\na1 = -1\n"), "party1.a1");
  // Start outside the triangle.
  EXPECT_EQ(error_key("[domain]\nk = 10\n[party1]\na1 = 1\n[party2]\na2 = 1\n[start]\nx1 = 6\nx2 = 5\n"),
            "start.x1");
  EXPECT_THROW(load_scenario("/nonexistent/scenario.txt"), ScenarioParseError);
}

TEST(Export, FormatRealRoundTrips) {
  for (const double v : {0.1, 1.0 / 3.0, 8.228980951519327, 1e-300, -2.5}) {
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
  EXPECT_EQ(format_real(std::nan("")), "");
}

TEST(Export, TraceCsvLayout) {
  NegotiationTrace t;
  t.points = {{5, 4}, {4, 3}};
  t.directions = {{-0.5, -0.5}};
  t.steps = {{2, 3, 2}};
  std::ostringstream os;
  write_trace_csv(os, t, UtilitySpec(1, 0, 4, 10), UtilitySpec(0, 1, 1, 10));
  std::istringstream in(os.str());
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_EQ(header, "t,x1,x2,g1,g2,lambda1,lambda2,lambda_star,u1,u2");
  EXPECT_EQ(row0.rfind("0,5,4,-0.5,-0.5,2,3,2,", 0), 0u);
  EXPECT_EQ(row1.rfind("1,4,3,,,,,,", 0), 0u);
  EXPECT_EQ(os.str().back(), '\n');
}

TEST(Export, SweepCsvMarksMissingStderr) {
  std::ostringstream os;
  const SweepRow rows[] = {{5, 0.25, std::nan(""), 1, 9}};
  write_sweep_csv(os, rows);
  EXPECT_EQ(os.str(), "M,mre,stderr,n,seed\n5,0.25,,1,9\n");
}

TEST(Export, HistogramCountsEveryInRangeValue) {
  const double values[] = {0.0, 0.05, 0.1, 0.95, 1.0, 1.5};
  const auto bins = make_histogram(values, 10, 0.0, 1.0);
  ASSERT_EQ(bins.size(), 10u);
  long total = 0;
  for (const auto& b : bins) total += b.count;
  EXPECT_EQ(total, 5);
  EXPECT_EQ(bins[0].count, 2);
  EXPECT_EQ(bins[9].count, 2);
  EXPECT_EQ(bins[9].hi, 1.0);
  EXPECT_THROW(make_histogram(values, 0, 0.0, 1.0), ConfigError);
}

}  // namespace
}  // namespace negotiation
