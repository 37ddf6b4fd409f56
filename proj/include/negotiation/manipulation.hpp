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

#ifndef NEGOTIATION_MANIPULATION_HPP_
#define NEGOTIATION_MANIPULATION_HPP_

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "negotiation/idm.hpp"
#include "negotiation/scenario.hpp"

namespace negotiation {

// ---------------------------------------------------------------------------
// Reading the opponent from mediator announcements.
// ---------------------------------------------------------------------------

// Undoes the bisector: 2 * announced - own_gradient / ||own_gradient||, which
// is the opponent's normalized gradient.
Vec2 invert_announcement(const Vec2& announced, const Vec2& own_gradient);

// Solves for beta in an opponent of shape (0, 1, beta, k) whose normalized
// gradient at x is v. With s = k - x1 - x2 the gradient is
// (-beta/s, 1/x2 - beta/s); requiring it to be parallel to v is linear in beta
// and gives beta = s v1 / (x2 (v1 - v2)).
//
// Throws UnresolvableError when v1 == v2 (to rounding) or the solution is
// negative, i.e. v is not the gradient of such an opponent at x.
double recover_beta(const Vec2& v, const Point& x, double k);

// Fits an opponent of shape (a1, 1, a3, k) to normalized-gradient samples by
// least squares on the parallelism conditions
//   a1 v2 / x1 - v1 / x2 + a3 (v1 - v2) / s = 0.
// Two samples at distinct points determine both coefficients.
class OpponentModelEstimator {
 public:
  explicit OpponentModelEstimator(double k) : k_(k) {}

  void add_sample(const Point& x, const Vec2& normalized_gradient);
  std::size_t size() const { return samples_.size(); }

  // Needs at least two well-conditioned samples; otherwise UnresolvableError.
  UtilitySpec estimate() const;

 private:
  double k_;
  std::vector<std::pair<Point, Vec2>> samples_;
};

struct EavesdropResult {
  OpponentModelEstimator estimator;
  NegotiationTrace trace;
};

// Party 1 stalls the negotiation by never agreeing to move more than
// `stall_step` per round, and records the opponent direction it can read from
// each of the first `samples` announcements.
EavesdropResult eavesdrop(const UtilitySpec& own, const UtilitySpec& opponent, const Point& x0,
                          const TriangularDomain& domain, int samples, double stall_step,
                          const IdmConfig& cfg = {});

// ---------------------------------------------------------------------------
// Misreporting and the induced strategic-form game.
// ---------------------------------------------------------------------------

enum class Party { kFirst = 0, kSecond = 1 };

// The perfect-competition declaration with conservation weight gamma.
UtilitySpec declared_utility(Party party, double gamma, double k);

// Memoizes IDM settlements keyed by the declared pair and start point. Safe
// for concurrent use.
class SettlementCache {
 public:
  // Returns nullopt when IDM does not converge.
  std::optional<Point> settle(const UtilitySpec& declared1, const UtilitySpec& declared2,
                              const Point& x0, const TriangularDomain& domain,
                              const IdmConfig& cfg);
  std::size_t size() const;

 private:
  using Key = std::tuple<double, double, double, double, double, double, double, double>;
  mutable std::mutex mu_;
  std::map<Key, std::optional<Point>> entries_;
};

// True payoff to `party` when it declares gamma and the opponent declares
// `opponent`. Nullopt when IDM does not converge.
std::optional<double> declared_payoff(Party party, double gamma, const UtilitySpec& true_self,
                                      const UtilitySpec& opponent, const Point& x0,
                                      const TriangularDomain& domain, const IdmConfig& cfg = {},
                                      SettlementCache* cache = nullptr);

struct GammaRange {
  double lo = 0.05;
  double hi = 20.0;
  int grid_points = 200;
};

struct BestResponse {
  double gamma = 0.0;
  double payoff = 0.0;
  // Payoff when declaring the true utility.
  double truthful_payoff = 0.0;
  // Log-spaced (gamma, payoff) sweep that seeded the refinement.
  std::vector<std::pair<double, double>> sweep;
  // Grid values where IDM did not converge.
  std::vector<double> skipped;
};

// Best a3 declaration for `party` against a fixed opponent declaration: a
// log-grid sweep over the range followed by golden-section refinement around
// the best grid point.
BestResponse best_response(Party party, const UtilitySpec& true_self, const UtilitySpec& opponent,
                           const Point& x0, const TriangularDomain& domain,
                           const GammaRange& range = {}, const IdmConfig& cfg = {},
                           SettlementCache* cache = nullptr);

// Party 1's best response; true1 must have shape (1, 0, beta1, k).
BestResponse best_response_gamma(const UtilitySpec& true1, const UtilitySpec& u2,
                                 const Point& x0, const TriangularDomain& domain,
                                 const GammaRange& range = {}, const IdmConfig& cfg = {},
                                 SettlementCache* cache = nullptr);

// declared[p] holds party p's strategic alternative; index 0 in the game is
// always the truthful declaration.
struct StrategicProfile {
  UtilitySpec declared1;
  UtilitySpec declared2;
  UtilitySpec true1;
  UtilitySpec true2;

  void validate() const;
};

using Payoffs = std::pair<double, double>;

// cells[i][j]: party 1 plays i, party 2 plays j, 0 = truthful, 1 = strategic.
// Payoffs are true utilities at the IDM settlement of the declared pair.
struct PayoffGame {
  std::array<std::array<Payoffs, 2>, 2> cells{};
  std::array<std::array<Point, 2>, 2> settlements{};
};

PayoffGame build_payoff_game(const StrategicProfile& profile, const Point& x0,
                             const TriangularDomain& domain, const IdmConfig& cfg = {});

struct DominantSolution {
  int row = 0;  // party 1's strategy
  int col = 0;  // party 2's strategy
  // Some player was indifferent and the truthful index was chosen.
  bool tie = false;
};

// The pair of weakly dominant strategies, or nullopt if either player has
// none.
std::optional<DominantSolution> dominant_strategy_solution(const PayoffGame& game);

// Strict improvement for both players.
bool pareto_dominates(const Payoffs& a, const Payoffs& b);

// ---------------------------------------------------------------------------
// End-to-end attack as party 1.
// ---------------------------------------------------------------------------

struct AttackReport {
  Vec2 announcement;
  Vec2 recovered_direction;
  Point recovery_point;
  double recovered_beta = 0.0;
  int attempts = 0;
  // Best response computed against the recovered opponent model.
  BestResponse response;
  // True payoffs against the actual opponent, declaring response.gamma and
  // declaring truthfully.
  double realized_payoff = 0.0;
  double truthful_payoff = 0.0;
  double payoff_lift() const { return realized_payoff - truthful_payoff; }
};

// Reads beta2 off the first usable announcement of the truthful run, then
// best-responds to the recovered opponent. Requires perfect-competition
// shapes (1, 0, beta1) and (0, 1, beta2).
AttackReport run_attack(const Scenario& scenario, const IdmConfig& cfg = {},
                        const GammaRange& range = {});

}  // namespace negotiation

#endif  // NEGOTIATION_MANIPULATION_HPP_
