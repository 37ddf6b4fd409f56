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

#include "negotiation/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace negotiation {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ScenarioParseError(key, "key '" + key + "': expected a real number, got '" +
                                      std::string(text) + "'");
  return v;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"", {"label"}},
      {"domain", {"k", "interior_margin"}},
      {"party1", {"a1", "a2", "a3", "strategic_a3"}},
      {"party2", {"a1", "a2", "a3", "strategic_a3"}},
      {"start", {"x1", "x2"}},
  };
  return keys;
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void Scenario::validate() const {
  if (true1.k != domain.k() || true2.k != domain.k())
    throw ConfigError("party utilities must share the domain's k");
  if (!domain.contains_strictly(x0)) throw ConfigError("start point must be strictly interior");
  for (const auto& g : {strategic_gamma1, strategic_gamma2})
    if (g && !(*g >= 0.0)) throw ConfigError("strategic a3 must be nonnegative");
}

Scenario paper_scenario() {
  Scenario s;
  s.label = std::string(kPaperPreset);
  s.domain = TriangularDomain(10.0);
  s.true1 = UtilitySpec::own_first(4.0, 10.0);
  s.true2 = UtilitySpec::own_second(7.0 / 3.0, 10.0);
  s.x0 = {5.0, 4.0};
  s.strategic_gamma1 = 7.0 / 3.0;
  s.strategic_gamma2 = 1.5;
  return s;
}

Scenario parse_scenario(std::istream& in) {
  std::map<std::string, std::string> values;  // "section.key" -> raw value
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;

    if (view.front() == '[') {
      if (view.back() != ']')
        throw ScenarioParseError(std::string(view), "line " + std::to_string(lineno) +
                                                        ": unterminated section header");
      section = std::string(trim(view.substr(1, view.size() - 2)));
      if (!known_keys().contains(section) || section.empty())
        throw ScenarioParseError(section, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ScenarioParseError(std::string(view), "line " + std::to_string(lineno) +
                                                      ": expected 'key = value'");
    const std::string key(trim(view.substr(0, eq)));
    const std::string value(trim(view.substr(eq + 1)));
    const std::string full = section.empty() ? key : section + "." + key;
    if (!known_keys().at(section).contains(key))
      throw ScenarioParseError(full, "unknown key '" + full + "'");
    if (values.contains(full)) throw ScenarioParseError(full, "duplicate key '" + full + "'");
    if (value.empty()) throw ScenarioParseError(full, "key '" + full + "' has no value");
    values[full] = value;
  }

  const auto real = [&](const std::string& key) -> std::optional<double> {
    const auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return parse_real(key, it->second);
  };
  const auto required = [&](const std::string& key) {
    const auto v = real(key);
    if (!v) throw ScenarioParseError(key, "missing required key '" + key + "'");
    return *v;
  };

  Scenario s;
  s.label = values.contains("label") ? values["label"] : "scenario";
  const double k = required("domain.k");
  try {
    s.domain = TriangularDomain(k, real("domain.interior_margin").value_or(-1.0));
  } catch (const ConfigError& e) {
    throw ScenarioParseError("domain.k", e.what());
  }
  const auto party = [&](const std::string& name) {
    try {
      return UtilitySpec(real(name + ".a1").value_or(0.0), real(name + ".a2").value_or(0.0),
                         real(name + ".a3").value_or(0.0), k);
    } catch (const ConfigError& e) {
      throw ScenarioParseError(name + ".a1", "[" + name + "]: " + e.what());
    }
  };
  s.true1 = party("party1");
  s.true2 = party("party2");
  s.strategic_gamma1 = real("party1.strategic_a3");
  s.strategic_gamma2 = real("party2.strategic_a3");
  s.x0 = {required("start.x1"), required("start.x2")};
  try {
    s.validate();
  } catch (const ConfigError& e) {
    throw ScenarioParseError("start.x1", e.what());
  }
  return s;
}

Scenario parse_scenario_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scenario(in);
}

Scenario load_scenario(const std::string& spec) {
  if (spec == kPaperPreset) return paper_scenario();
  std::ifstream in(spec);
  if (!in) throw ScenarioParseError("", "cannot open scenario '" + spec + "'");
  return parse_scenario(in);
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "label = " << s.label << "\n\n[domain]\n"
     << "k = " << format_real(s.domain.k()) << "\n"
     << "interior_margin = " << format_real(s.domain.interior_margin()) << "\n";
  const auto party = [&](const char* name, const UtilitySpec& u, const std::optional<double>& g) {
    os << "\n[" << name << "]\n"
       << "a1 = " << format_real(u.a1) << "\na2 = " << format_real(u.a2)
       << "\na3 = " << format_real(u.a3) << "\n";
    if (g) os << "strategic_a3 = " << format_real(*g) << "\n";
  };
  party("party1", s.true1, s.strategic_gamma1);
  party("party2", s.true2, s.strategic_gamma2);
  os << "\n[start]\nx1 = " << format_real(s.x0[0]) << "\nx2 = " << format_real(s.x0[1]) << "\n";
  return os.str();
}

}  // namespace negotiation
