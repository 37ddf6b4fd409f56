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

#ifndef NEGOTIATION_SCENARIO_HPP_
#define NEGOTIATION_SCENARIO_HPP_

#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "negotiation/domain.hpp"

namespace negotiation {

// A two-party negotiation instance: the domain, both true utilities, the
// pre-agreed start and, optionally, each party's strategic a3 declaration.
struct Scenario {
  std::string label;
  TriangularDomain domain{10.0};
  UtilitySpec true1;
  UtilitySpec true2;
  Point x0;
  std::optional<double> strategic_gamma1;
  std::optional<double> strategic_gamma2;

  // Throws ConfigError if specs disagree on k or x0 is not strictly interior.
  void validate() const;

  ParetoSegment true_frontier() const { return pareto_frontier(true1, true2); }
};

inline constexpr std::string_view kPaperPreset = "paper-triangle";

// k = 10, party 1 = (1, 0, 4), party 2 = (0, 1, 7/3), start (5, 4). The
// strategic declarations are a3 = 7/3 for party 1 and a3 = 3/2 for party 2.
Scenario paper_scenario();

// Parses the key-value format:
//
//   label = my-scenario
//   [domain]
//   k = 10
//   interior_margin = 1e-8      # optional
//   [party1]
//   a1 = 1
//   a2 = 0
//   a3 = 4
//   strategic_a3 = 2.3333      # optional
//   [party2]
//   ...
//   [start]
//   x1 = 5
//   x2 = 4
//
// Throws ScenarioParseError naming the offending key.
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_text(std::string_view text);

// `spec` is a preset name or a path to a scenario file.
Scenario load_scenario(const std::string& spec);

// Serializes in the format parse_scenario reads.
std::string format_scenario(const Scenario& s);

}  // namespace negotiation

#endif  // NEGOTIATION_SCENARIO_HPP_
