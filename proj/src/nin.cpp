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

#include "negotiation/nin.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace negotiation {

namespace {

constexpr double kZeroDirection = 1e-14;

// Neumaier compensated sum; order-stable to well below the statistical noise.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double frontier_distance_or_nan(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x) {
  if (!u1.is_perfect_competition() || !u2.is_perfect_competition())
    return std::numeric_limits<double>::quiet_NaN();
  return distance_to_frontier(pareto_frontier(u1, u2), x);
}

}  // namespace

void NinConfig::validate() const {
  if (M < 1) throw ConfigError("M must be >= 1");
  if (!(movement_threshold >= 1e-12)) throw ConfigError("movement_threshold must be >= 1e-12");
  if (max_total_rounds < 1) throw ConfigError("max_total_rounds must be >= 1");
  step.validate();
}

Vec2 sample_direction(const UtilitySpec& u, const Point& x, const SecretDistribution& dist,
                      Rng& rng) {
  const Vec2 g = u.gradient(x);
  const double gn = norm(g);
  if (!(gn > 0.0)) throw DegenerateGradientError("zero-norm gradient in direction sampling");
  if (dist.spread_ratio == 0.0) return g;

  std::normal_distribution<double> noise(0.0, dist.spread_ratio * gn);
  for (;;) {
    Vec2 v = g;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += noise(rng);
    if (norm(v) >= 1e-12) return v;
  }
}

NinRound nin_map(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                 const SecretDistribution& dist1, const SecretDistribution& dist2,
                 const TriangularDomain& domain, const NinConfig& cfg, Rng& rng) {
  if (!domain.contains_strictly(x)) throw DomainError("NIN round from a non-interior point");
  NinRound out{x, {}, {}, false};
  try {
    out.direction = bisector_direction(sample_direction(u1, x, dist1, rng),
                                       sample_direction(u2, x, dist2, rng));
  } catch (const DegenerateGradientError&) {
    return out;
  }
  if (norm(out.direction) < kZeroDirection) return out;

  // Each party answers with its true utility; a non-improving direction gets
  // a zero step, which vetoes the move.
  out.lengths.lambda1 = preferred_step(u1, x, out.direction, domain, cfg.step);
  out.lengths.lambda2 = preferred_step(u2, x, out.direction, domain, cfg.step);
  out.lengths.lambda_star = std::min(out.lengths.lambda1, out.lengths.lambda2);
  if (out.lengths.lambda_star > cfg.movement_threshold) {
    out.point = x + out.lengths.lambda_star * out.direction;
    out.moved = true;
  }
  return out;
}

TrialStats nin_run(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x0,
                   const SecretDistribution& dist1, const SecretDistribution& dist2,
                   const TriangularDomain& domain, const NinConfig& cfg, Rng& rng,
                   std::vector<Point>* trajectory) {
  cfg.validate();
  if (!domain.contains_strictly(x0)) throw DomainError("NIN start point is not strictly interior");

  TrialStats stats;
  Point x = x0;
  if (trajectory) trajectory->push_back(x);
  int failures = 0;
  while (failures < cfg.M) {
    if (stats.total_rounds >= cfg.max_total_rounds) {
      stats.exhausted = true;
      break;
    }
    const NinRound round = nin_map(u1, u2, x, dist1, dist2, domain, cfg, rng);
    ++stats.total_rounds;
    if (round.moved) {
      x = round.point;
      ++stats.accepted_steps;
      failures = 0;
      if (trajectory) trajectory->push_back(x);
    } else {
      ++failures;
    }
  }

  stats.settlement = x;
  stats.final_distance = frontier_distance_or_nan(u1, u2, x);
  const double d0 = frontier_distance_or_nan(u1, u2, x0);
  stats.relative_error = d0 > 0.0 ? stats.final_distance / d0 : 0.0;
  return stats;
}

MreEstimate mre_estimate(const Scenario& scenario, const SecretDistribution& dist, int M, int n,
                         const NinConfig& cfg, std::uint64_t seed, unsigned threads) {
  if (n < 1) throw ConfigError("trial count must be >= 1");
  scenario.validate();
  NinConfig trial_cfg = cfg;
  trial_cfg.M = M;
  trial_cfg.validate();

  MreEstimate est;
  est.n = n;
  est.trials.resize(static_cast<std::size_t>(n));

  const auto run_trial = [&](int i) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    est.trials[static_cast<std::size_t>(i)] =
        nin_run(scenario.true1, scenario.true2, scenario.x0, dist, dist, scenario.domain,
                trial_cfg, rng);
  };

  const unsigned workers = std::clamp(threads, 1u, static_cast<unsigned>(n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) run_trial(i);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) run_trial(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  CompensatedSum sum;
  for (const auto& t : est.trials) sum.add(t.relative_error);
  est.mre = sum.value() / n;
  if (n < 2) {
    est.std_error = std::numeric_limits<double>::quiet_NaN();
  } else {
    CompensatedSum sq;
    for (const auto& t : est.trials) sq.add((t.relative_error - est.mre) * (t.relative_error - est.mre));
    est.std_error = std::sqrt(sq.value() / (n - 1) / n);
  }
  return est;
}

double improve_probability(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                           const SecretDistribution& dist1, const SecretDistribution& dist2,
                           int n, std::uint64_t seed, const TriangularDomain& domain,
                           const NinConfig& cfg) {
  if (n < 1) throw ConfigError("sample count must be >= 1");
  Rng rng = stream_rng(seed, 0);
  int moved = 0;
  for (int i = 0; i < n; ++i) moved += nin_map(u1, u2, x, dist1, dist2, domain, cfg, rng).moved;
  return static_cast<double>(moved) / n;
}

double premature_stop_frequency(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                                const SecretDistribution& dist1,
                                const SecretDistribution& dist2, int M, int n,
                                std::uint64_t seed, const TriangularDomain& domain,
                                const NinConfig& cfg) {
  if (n < 1) throw ConfigError("trial count must be >= 1");
  if (M < 1) throw ConfigError("M must be >= 1");
  int stopped = 0;
  for (int i = 0; i < n; ++i) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(i));
    int failures = 0;
    while (failures < M && !nin_map(u1, u2, x, dist1, dist2, domain, cfg, rng).moved) ++failures;
    stopped += failures == M;
  }
  return static_cast<double>(stopped) / n;
}

}  // namespace negotiation
