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

#ifndef NEGOTIATION_EXPORT_HPP_
#define NEGOTIATION_EXPORT_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "negotiation/idm.hpp"
#include "negotiation/manipulation.hpp"
#include "negotiation/nin.hpp"

namespace negotiation {

// Shortest decimal string that round-trips to the same double.
std::string format_real(double v);

// Columns t, x1, x2, g1, g2, lambda1, lambda2, lambda_star, u1, u2. Row t holds
// point t with the direction and step lengths announced from it; the direction
// and step fields of the final row are empty. u1/u2 are evaluated with
// `value1`/`value2`, normally the parties' true utilities.
void write_trace_csv(std::ostream& os, const NegotiationTrace& trace, const UtilitySpec& value1,
                     const UtilitySpec& value2);

// Columns p1_declares, p2_declares, payoff1, payoff2, cell, settlement_x1,
// settlement_x2; `cell` is "(p1, p2)". Declarations are "truthful" or
// "strategic".
void write_payoff_csv(std::ostream& os, const PayoffGame& game);

// Columns trial, M, settlement_x1, settlement_x2, rel_error, rounds.
void write_trials_csv(std::ostream& os, int M, std::span<const TrialStats> trials);

// Columns trial, step, x1, x2.
void write_trajectories_csv(std::ostream& os, std::span<const std::vector<Point>> trajectories);

struct SweepRow {
  int M = 0;
  double mre = 0.0;
  double std_error = 0.0;  // NaN is written as an empty field
  int n = 0;
  std::uint64_t seed = 0;
};

// Columns M, mre, stderr, n, seed.
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  long count = 0;
};

// `bins` equal-width bins over [lo, hi]; the last bin is closed. Values
// outside the range are dropped.
std::vector<HistogramBin> make_histogram(std::span<const double> values, int bins, double lo,
                                         double hi);

// Columns bin_lo, bin_hi, count.
void write_histogram_csv(std::ostream& os, std::span<const HistogramBin> bins);

}  // namespace negotiation

#endif  // NEGOTIATION_EXPORT_HPP_
