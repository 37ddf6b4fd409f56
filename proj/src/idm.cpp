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

#include "negotiation/idm.hpp"

#include <algorithm>
#include <cmath>

namespace negotiation {

namespace {

// Directions shorter than this are treated as the zero bisector produced by
// anti-parallel gradients.
constexpr double kZeroDirection = 1e-14;

// Golden-section maximization of a unimodal f on [lo, hi].
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  while (hi - lo > tol) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void StepRule::validate() const {
  if (!(line_search_tol > 0.0)) throw ConfigError("line_search_tol must be positive");
  if (!(max_step_length > 0.0)) throw ConfigError("max_step_length must be positive");
}

void IdmConfig::validate() const {
  if (!(convergence_tol >= 1e-12)) throw ConfigError("convergence_tol must be >= 1e-12");
  if (max_iterations <= 0 || max_iterations > 1000000)
    throw ConfigError("max_iterations must lie in [1, 1e6]");
  step.validate();
}

Vec2 bisector_direction(const Vec2& g1, const Vec2& g2) {
  const double n1 = norm(g1);
  const double n2 = norm(g2);
  if (!(n1 > 0.0) || !(n2 > 0.0)) throw DegenerateGradientError("zero-norm gradient");
  return g1 / (2.0 * n1) + g2 / (2.0 * n2);
}

double preferred_step(const UtilitySpec& u, const Point& x, const Vec2& d,
                      const TriangularDomain& domain, double line_search_tol,
                      double max_displacement) {
  if (!domain.contains_strictly(x)) throw DomainError("preferred step from a non-interior point");
  const double dn = norm(d);
  if (!(dn > 0.0)) return 0.0;
  if (dot(u.gradient(x), d) <= 0.0) return 0.0;

  const double hi = std::min(domain.max_interior_step(x, d), max_displacement / dn);
  if (!(hi > 0.0)) return 0.0;

  const auto along = [&](double t) { return u.value(x + t * d); };
  double t = hi;
  // Utilities in the family are concave, so a nonnegative slope at hi means
  // the maximizer sits on the clamp.
  if (dot(u.gradient(x + hi * d), d) < 0.0) t = golden_section_max(along, 0.0, hi, line_search_tol);
  return along(t) > along(0.0) ? t : 0.0;
}

double preferred_step(const UtilitySpec& u, const Point& x, const Vec2& d,
                      const TriangularDomain& domain, const StepRule& rule) {
  return preferred_step(u, x, d, domain, rule.line_search_tol, rule.max_step_length);
}

IdmStep idm_step(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                 const TriangularDomain& domain, const IdmConfig& cfg) {
  if (!domain.contains_strictly(x)) throw DomainError("IDM step from a non-interior point");
  IdmStep out{x, bisector_direction(u1.gradient(x), u2.gradient(x)), {}};
  if (norm(out.direction) < kZeroDirection) return out;

  out.lengths.lambda1 = preferred_step(u1, x, out.direction, domain, cfg.step);
  out.lengths.lambda2 = preferred_step(u2, x, out.direction, domain, cfg.step);
  out.lengths.lambda_star = std::min(out.lengths.lambda1, out.lengths.lambda2);
  out.point = x + out.lengths.lambda_star * out.direction;
  return out;
}

NegotiationTrace idm_run(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x0,
                         const TriangularDomain& domain, const IdmConfig& cfg) {
  cfg.validate();
  if (!domain.contains_strictly(x0)) throw DomainError("IDM start point is not strictly interior");

  NegotiationTrace trace;
  trace.points.push_back(x0);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const Point& x = trace.points.back();
    IdmStep step = idm_step(u1, u2, x, domain, cfg);
    if (step.lengths.lambda_star == 0.0) {
      trace.converged = true;
      break;
    }
    const double moved = norm(step.point - x);
    trace.directions.push_back(step.direction);
    trace.steps.push_back(step.lengths);
    trace.points.push_back(step.point);
    if (moved < cfg.convergence_tol) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

}  // namespace negotiation
