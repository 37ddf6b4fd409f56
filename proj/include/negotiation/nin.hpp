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

#ifndef NEGOTIATION_NIN_HPP_
#define NEGOTIATION_NIN_HPP_

#include <cstdint>
#include <vector>

#include "negotiation/idm.hpp"
#include "negotiation/rng.hpp"
#include "negotiation/scenario.hpp"

namespace negotiation {

// A party's private answer distribution: the true gradient plus isotropic
// Gaussian noise whose per-component standard deviation is
// spread_ratio * ||gradient||.
struct SecretDistribution {
  double spread_ratio = 0.25;
};

struct NinConfig {
  // Consecutive failed rounds that end the negotiation.
  int M = 5;
  // A round counts as a move only when lambda* exceeds this.
  double movement_threshold = 1e-9;
  long max_total_rounds = 100000;
  std::uint64_t seed = 0;
  StepRule step;

  void validate() const;
};

struct NinRound {
  Point point;
  Vec2 direction;
  StepLengths lengths;
  bool moved = false;
};

struct TrialStats {
  Point settlement;
  int accepted_steps = 0;
  long total_rounds = 0;
  // Distance to the true frontier.
  double final_distance = 0.0;
  // final_distance / d(F, x0); zero when x0 is already on the frontier.
  double relative_error = 0.0;
  // Stopped by max_total_rounds rather than by M consecutive failures.
  bool exhausted = false;
};

Vec2 sample_direction(const UtilitySpec& u, const Point& x, const SecretDistribution& dist,
                      Rng& rng);

// One stochastic round. Both parties announce sampled directions, the mediator
// forms their bisector, and each party answers with its preferred step under
// its true utility (zero when the direction does not improve it). A round
// that fails leaves the point unchanged.
NinRound nin_map(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                 const SecretDistribution& dist1, const SecretDistribution& dist2,
                 const TriangularDomain& domain, const NinConfig& cfg, Rng& rng);

// Runs rounds from x0 until M consecutive failures. Accepted points are
// appended to `trajectory` (starting with x0) when it is non-null.
TrialStats nin_run(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x0,
                   const SecretDistribution& dist1, const SecretDistribution& dist2,
                   const TriangularDomain& domain, const NinConfig& cfg, Rng& rng,
                   std::vector<Point>* trajectory = nullptr);

struct MreEstimate {
  double mre = 0.0;
  // Standard error of the mean; NaN for n < 2.
  double std_error = 0.0;
  int n = 0;
  std::vector<TrialStats> trials;
};

// Mean relative error over n trials. Trial i draws from stream_rng(seed, i),
// so the result does not depend on `threads`.
MreEstimate mre_estimate(const Scenario& scenario, const SecretDistribution& dist, int M, int n,
                         const NinConfig& cfg, std::uint64_t seed, unsigned threads = 1);

// Monte-Carlo estimate of the probability that one round at x moves.
double improve_probability(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                           const SecretDistribution& dist1, const SecretDistribution& dist2,
                           int n, std::uint64_t seed, const TriangularDomain& domain,
                           const NinConfig& cfg = {});

// Fraction of n negotiations started at x whose first M rounds all fail, that
// is, which stop at x without ever moving.
double premature_stop_frequency(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                                const SecretDistribution& dist1,
                                const SecretDistribution& dist2, int M, int n,
                                std::uint64_t seed, const TriangularDomain& domain,
                                const NinConfig& cfg = {});

}  // namespace negotiation

#endif  // NEGOTIATION_NIN_HPP_
