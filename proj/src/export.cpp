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

#include "negotiation/export.hpp"

#include <charconv>
#include <algorithm>
#include <cmath>

namespace negotiation {

namespace {

const char* kStrategyLabel[2] = {"truthful", "strategic"};

}  // namespace

std::string format_real(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& os, const NegotiationTrace& trace, const UtilitySpec& value1,
                     const UtilitySpec& value2) {
  os << "t,x1,x2,g1,g2,lambda1,lambda2,lambda_star,u1,u2\n";
  for (std::size_t t = 0; t < trace.points.size(); ++t) {
    const Point& x = trace.points[t];
    os << t << ',' << format_real(x[0]) << ',' << format_real(x[1]) << ',';
    if (t < trace.steps.size()) {
      const Vec2& d = trace.directions[t];
      const StepLengths& s = trace.steps[t];
      os << format_real(d[0]) << ',' << format_real(d[1]) << ',' << format_real(s.lambda1) << ','
         << format_real(s.lambda2) << ',' << format_real(s.lambda_star) << ',';
    } else {
      os << ",,,,,";
    }
    os << format_real(value1.value(x)) << ',' << format_real(value2.value(x)) << '\n';
  }
}

void write_payoff_csv(std::ostream& os, const PayoffGame& game) {
  os << "p1_declares,p2_declares,payoff1,payoff2,cell,settlement_x1,settlement_x2\n";
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto& [p1, p2] = game.cells[i][j];
      const Point& x = game.settlements[i][j];
      os << kStrategyLabel[i] << ',' << kStrategyLabel[j] << ',' << format_real(p1) << ','
         << format_real(p2) << ",\"(" << format_real(p1) << ", " << format_real(p2) << ")\","
         << format_real(x[0]) << ',' << format_real(x[1]) << '\n';
    }
  }
}

void write_trials_csv(std::ostream& os, int M, std::span<const TrialStats> trials) {
  os << "trial,M,settlement_x1,settlement_x2,rel_error,rounds\n";
  for (std::size_t i = 0; i < trials.size(); ++i) {
    const TrialStats& t = trials[i];
    os << i << ',' << M << ',' << format_real(t.settlement[0]) << ','
       << format_real(t.settlement[1]) << ',' << format_real(t.relative_error) << ','
       << t.total_rounds << '\n';
  }
}

void write_trajectories_csv(std::ostream& os, std::span<const std::vector<Point>> trajectories) {
  os << "trial,step,x1,x2\n";
  for (std::size_t i = 0; i < trajectories.size(); ++i)
    for (std::size_t s = 0; s < trajectories[i].size(); ++s)
      os << i << ',' << s << ',' << format_real(trajectories[i][s][0]) << ','
         << format_real(trajectories[i][s][1]) << '\n';
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
  os << "M,mre,stderr,n,seed\n";
  for (const SweepRow& r : rows)
    os << r.M << ',' << format_real(r.mre) << ',' << format_real(r.std_error) << ',' << r.n << ','
       << r.seed << '\n';
}

std::vector<HistogramBin> make_histogram(std::span<const double> values, int bins, double lo,
                                         double hi) {
  if (bins < 1 || !(hi > lo)) throw ConfigError("histogram needs bins >= 1 and hi > lo");
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  const double width = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) {
    out[b].lo = lo + b * width;
    out[b].hi = b + 1 == bins ? hi : lo + (b + 1) * width;
  }
  for (double v : values) {
    if (!(v >= lo && v <= hi)) continue;
    const auto b = std::min(static_cast<int>((v - lo) / width), bins - 1);
    ++out[static_cast<std::size_t>(b)].count;
  }
  return out;
}

void write_histogram_csv(std::ostream& os, std::span<const HistogramBin> bins) {
  os << "bin_lo,bin_hi,count\n";
  for (const HistogramBin& b : bins)
    os << format_real(b.lo) << ',' << format_real(b.hi) << ',' << b.count << '\n';
}

}  // namespace negotiation
