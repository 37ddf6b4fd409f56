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

#include "negotiation/manipulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>

namespace negotiation {

Vec2 invert_announcement(const Vec2& announced, const Vec2& own_gradient) {
  const double n = norm(own_gradient);
  if (!(n > 0.0)) throw DegenerateGradientError("own gradient has zero norm");
  return 2.0 * announced - own_gradient / n;
}

double recover_beta(const Vec2& v, const Point& x, double k) {
  const double s = k - x[0] - x[1];
  if (!(x[0] > 0.0 && x[1] > 0.0 && s > 0.0))
    throw DomainError("beta recovery needs a strictly interior point");
  const double denom = x[1] * (v[0] - v[1]);
  if (std::abs(v[0] - v[1]) < 1e-12 * norm(v))
    throw UnresolvableError("announcement is orthogonal to the conservation axis at this point");
  const double beta = s * v[0] / denom;
  // Parallelism also admits the reversed direction; keep only the orientation
  // the opponent's gradient actually has.
  const Vec2 g{-beta / s, 1.0 / x[1] - beta / s};
  if (!(beta >= 0.0) || !std::isfinite(beta) || dot(g, v) <= 0.0)
    throw UnresolvableError("direction is not the gradient of a (0, 1, beta) utility here");
  return beta;
}

void OpponentModelEstimator::add_sample(const Point& x, const Vec2& normalized_gradient) {
  samples_.emplace_back(x, normalized_gradient);
}

UtilitySpec OpponentModelEstimator::estimate() const {
  // Normal equations for rows (v2/x1, (v1 - v2)/s) and right-hand side v1/x2.
  double aa = 0.0, ab = 0.0, bb = 0.0, ar = 0.0, br = 0.0;
  for (const auto& [x, v] : samples_) {
    const double s = k_ - x[0] - x[1];
    const double a = v[1] / x[0];
    const double b = (v[0] - v[1]) / s;
    const double r = v[0] / x[1];
    aa += a * a;
    ab += a * b;
    bb += b * b;
    ar += a * r;
    br += b * r;
  }
  const double det = aa * bb - ab * ab;
  if (samples_.size() < 2 || !(std::abs(det) > 1e-300) ||
      std::abs(det) < 1e-14 * std::max(aa * bb, 1e-300))
    throw UnresolvableError("opponent samples do not determine both coefficients");
  const double a1 = (ar * bb - br * ab) / det;
  const double a3 = (aa * br - ab * ar) / det;
  // Fitted coefficients can undershoot zero by rounding.
  return {std::max(a1, 0.0), 1.0, std::max(a3, 0.0), k_};
}

EavesdropResult eavesdrop(const UtilitySpec& own, const UtilitySpec& opponent, const Point& x0,
                          const TriangularDomain& domain, int samples, double stall_step,
                          const IdmConfig& cfg) {
  if (samples < 1 || !(stall_step > 0.0)) throw ConfigError("eavesdrop needs samples and a stall step");
  EavesdropResult out{OpponentModelEstimator(domain.k()), {}};
  out.trace.points.push_back(x0);
  for (int i = 0; i < samples; ++i) {
    const Point x = out.trace.points.back();
    const Vec2 own_grad = own.gradient(x);
    const Vec2 dir = bisector_direction(own_grad, opponent.gradient(x));
    out.estimator.add_sample(x, invert_announcement(dir, own_grad));

    StepLengths len;
    len.lambda1 = std::min(preferred_step(own, x, dir, domain, cfg.step), stall_step);
    len.lambda2 = preferred_step(opponent, x, dir, domain, cfg.step);
    len.lambda_star = std::min(len.lambda1, len.lambda2);
    if (len.lambda_star == 0.0) break;
    out.trace.directions.push_back(dir);
    out.trace.steps.push_back(len);
    out.trace.points.push_back(x + len.lambda_star * dir);
  }
  return out;
}

UtilitySpec declared_utility(Party party, double gamma, double k) {
  return party == Party::kFirst ? UtilitySpec::own_first(gamma, k)
                                : UtilitySpec::own_second(gamma, k);
}

std::optional<Point> SettlementCache::settle(const UtilitySpec& d1, const UtilitySpec& d2,
                                             const Point& x0, const TriangularDomain& domain,
                                             const IdmConfig& cfg) {
  const Key key{d1.a1, d1.a2, d1.a3, d2.a1, d2.a2, d2.a3, x0[0], x0[1]};
  {
    std::lock_guard lock(mu_);
    if (const auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  const NegotiationTrace trace = idm_run(d1, d2, x0, domain, cfg);
  std::optional<Point> result;
  if (trace.converged) result = trace.settlement();
  std::lock_guard lock(mu_);
  entries_.emplace(key, result);
  return result;
}

std::size_t SettlementCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

namespace {

std::optional<Point> settle(const UtilitySpec& d1, const UtilitySpec& d2, const Point& x0,
                            const TriangularDomain& domain, const IdmConfig& cfg,
                            SettlementCache* cache) {
  if (cache) return cache->settle(d1, d2, x0, domain, cfg);
  const NegotiationTrace trace = idm_run(d1, d2, x0, domain, cfg);
  if (!trace.converged) return std::nullopt;
  return trace.settlement();
}

std::optional<double> payoff_for(Party party, const UtilitySpec& declared_self,
                                 const UtilitySpec& true_self, const UtilitySpec& opponent,
                                 const Point& x0, const TriangularDomain& domain,
                                 const IdmConfig& cfg, SettlementCache* cache) {
  const auto x = party == Party::kFirst ? settle(declared_self, opponent, x0, domain, cfg, cache)
                                        : settle(opponent, declared_self, x0, domain, cfg, cache);
  if (!x) return std::nullopt;
  return true_self.value(*x);
}

}  // namespace

std::optional<double> declared_payoff(Party party, double gamma, const UtilitySpec& true_self,
                                      const UtilitySpec& opponent, const Point& x0,
                                      const TriangularDomain& domain, const IdmConfig& cfg,
                                      SettlementCache* cache) {
  return payoff_for(party, declared_utility(party, gamma, domain.k()), true_self, opponent, x0,
                    domain, cfg, cache);
}

BestResponse best_response(Party party, const UtilitySpec& true_self, const UtilitySpec& opponent,
                           const Point& x0, const TriangularDomain& domain,
                           const GammaRange& range, const IdmConfig& cfg,
                           SettlementCache* cache) {
  const bool own_shape = party == Party::kFirst
                             ? (true_self.a1 == 1.0 && true_self.a2 == 0.0)
                             : (true_self.a1 == 0.0 && true_self.a2 == 1.0);
  if (!own_shape) throw UnsupportedShapeError("best response needs a (1,0,beta) or (0,1,beta) party");
  if (!(range.lo > 0.0) || !(range.hi > range.lo) || range.grid_points < 2)
    throw ConfigError("gamma range must satisfy 0 < lo < hi with at least two grid points");

  BestResponse out;
  const auto truthful = payoff_for(party, true_self, true_self, opponent, x0, domain, cfg, cache);
  if (!truthful) throw NegotiationError("truthful IDM run did not converge");
  out.truthful_payoff = *truthful;

  const double log_lo = std::log(range.lo);
  const double log_step = (std::log(range.hi) - log_lo) / (range.grid_points - 1);
  const auto grid = [&](int i) { return std::exp(log_lo + i * log_step); };

  int best = -1;
  for (int i = 0; i < range.grid_points; ++i) {
    const double gamma = grid(i);
    const auto p = declared_payoff(party, gamma, true_self, opponent, x0, domain, cfg, cache);
    if (!p) {
      out.skipped.push_back(gamma);
      continue;
    }
    out.sweep.emplace_back(gamma, *p);
    if (best < 0 || *p > out.sweep[static_cast<std::size_t>(best)].second)
      best = static_cast<int>(out.sweep.size()) - 1;
  }
  if (best < 0) throw NegotiationError("IDM failed to converge for every swept gamma");
  out.gamma = out.sweep[static_cast<std::size_t>(best)].first;
  out.payoff = out.sweep[static_cast<std::size_t>(best)].second;

  // Golden-section refinement in log(gamma) over the neighbouring grid cells.
  const auto objective = [&](double log_gamma) {
    const auto p = declared_payoff(party, std::exp(log_gamma), true_self, opponent, x0, domain,
                                   cfg, nullptr);
    return p.value_or(-std::numeric_limits<double>::infinity());
  };
  double lo = std::max(std::log(out.gamma) - log_step, log_lo);
  double hi = std::min(std::log(out.gamma) + log_step, std::log(range.hi));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
  double fa = objective(a), fb = objective(b);
  while (hi - lo > 1e-7) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = objective(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = objective(a);
    }
  }
  const double refined = 0.5 * (lo + hi);
  if (const double p = objective(refined); p > out.payoff) {
    out.gamma = std::exp(refined);
    out.payoff = p;
  }
  return out;
}

BestResponse best_response_gamma(const UtilitySpec& true1, const UtilitySpec& u2,
                                 const Point& x0, const TriangularDomain& domain,
                                 const GammaRange& range, const IdmConfig& cfg,
                                 SettlementCache* cache) {
  return best_response(Party::kFirst, true1, u2, x0, domain, range, cfg, cache);
}

void StrategicProfile::validate() const {
  const double k = true1.k;
  if (declared1.k != k || declared2.k != k || true2.k != k)
    throw ConfigError("strategic profile specs must share k");
}

PayoffGame build_payoff_game(const StrategicProfile& profile, const Point& x0,
                             const TriangularDomain& domain, const IdmConfig& cfg) {
  profile.validate();
  const std::array<UtilitySpec, 2> options1{profile.true1, profile.declared1};
  const std::array<UtilitySpec, 2> options2{profile.true2, profile.declared2};

  std::array<std::array<std::future<NegotiationTrace>, 2>, 2> runs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      runs[i][j] = std::async(std::launch::async, [&, i, j] {
        return idm_run(options1[i], options2[j], x0, domain, cfg);
      });

  PayoffGame game;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const NegotiationTrace trace = runs[i][j].get();
      if (!trace.converged)
        throw NegotiationError("IDM did not converge for payoff cell (" + std::to_string(i) +
                               ", " + std::to_string(j) + ")");
      const Point& x = trace.settlement();
      game.settlements[i][j] = x;
      game.cells[i][j] = {profile.true1.value(x), profile.true2.value(x)};
    }
  }
  return game;
}

std::optional<DominantSolution> dominant_strategy_solution(const PayoffGame& game) {
  const auto& c = game.cells;
  const auto dominates1 = [&](int i) {
    return c[i][0].first >= c[1 - i][0].first && c[i][1].first >= c[1 - i][1].first;
  };
  const auto dominates2 = [&](int j) {
    return c[0][j].second >= c[0][1 - j].second && c[1][j].second >= c[1][1 - j].second;
  };

  DominantSolution out;
  if (dominates1(0)) {
    out.row = 0;
    out.tie = dominates1(1);
  } else if (dominates1(1)) {
    out.row = 1;
  } else {
    return std::nullopt;
  }
  if (dominates2(0)) {
    out.col = 0;
    out.tie = out.tie || dominates2(1);
  } else if (dominates2(1)) {
    out.col = 1;
  } else {
    return std::nullopt;
  }
  return out;
}

bool pareto_dominates(const Payoffs& a, const Payoffs& b) {
  return a.first > b.first && a.second > b.second;
}

AttackReport run_attack(const Scenario& scenario, const IdmConfig& cfg, const GammaRange& range) {
  scenario.validate();
  const UtilitySpec& own = scenario.true1;
  if (!(own.a1 == 1.0 && own.a2 == 0.0) ||
      !(scenario.true2.a1 == 0.0 && scenario.true2.a2 == 1.0))
    throw UnsupportedShapeError("attack needs parties of shape (1,0,beta1) and (0,1,beta2)");

  const NegotiationTrace truthful =
      idm_run(own, scenario.true2, scenario.x0, scenario.domain, cfg);

  AttackReport report;
  bool recovered = false;
  for (std::size_t t = 0; t < truthful.directions.size() && !recovered; ++t) {
    ++report.attempts;
    const Point& x = truthful.points[t];
    const Vec2 v = invert_announcement(truthful.directions[t], own.gradient(x));
    try {
      report.recovered_beta = recover_beta(v, x, scenario.domain.k());
      report.announcement = truthful.directions[t];
      report.recovered_direction = v;
      report.recovery_point = x;
      recovered = true;
    } catch (const UnresolvableError&) {
    }
  }
  if (!recovered) throw UnresolvableError("no announcement along the run allowed recovery");

  const UtilitySpec model = UtilitySpec::own_second(report.recovered_beta, scenario.domain.k());
  report.response = best_response(Party::kFirst, own, model, scenario.x0, scenario.domain, range, cfg);

  const auto realized = declared_payoff(Party::kFirst, report.response.gamma, own, scenario.true2,
                                        scenario.x0, scenario.domain, cfg);
  if (!realized || !truthful.converged)
    throw NegotiationError("IDM did not converge while evaluating the attack");
  report.realized_payoff = *realized;
  report.truthful_payoff = own.value(truthful.settlement());
  return report;
}

}  // namespace negotiation
