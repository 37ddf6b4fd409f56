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

#ifndef NEGOTIATION_IDM_HPP_
#define NEGOTIATION_IDM_HPP_

#include <limits>
#include <vector>

#include "negotiation/domain.hpp"

namespace negotiation {

// How a party picks its preferred step along an announced direction.
struct StepRule {
  // Golden-section bracket width at which the line search stops.
  double line_search_tol = 1e-9;
  // Upper bound on the Euclidean length of one move. Each party maximizes its
  // utility along the ray within this radius; infinity gives the unbounded
  // maximizing step.
  double max_step_length = 0.5;

  void validate() const;
};

struct IdmConfig {
  // Stop once ||x_{t+1} - x_t|| falls below this.
  double convergence_tol = 1e-7;
  int max_iterations = 10000;
  StepRule step;

  void validate() const;
};

struct StepLengths {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda_star = 0.0;
};

struct IdmStep {
  Point point;
  Vec2 direction;
  StepLengths lengths;
};

// points[t + 1] = points[t] + steps[t].lambda_star * directions[t].
struct NegotiationTrace {
  std::vector<Point> points;
  std::vector<Vec2> directions;
  std::vector<StepLengths> steps;
  bool converged = false;

  const Point& settlement() const { return points.back(); }
  std::size_t iterations() const { return steps.size(); }
};

// g1 / (2 ||g1||) + g2 / (2 ||g2||). Throws DegenerateGradientError when an
// input has zero norm.
Vec2 bisector_direction(const Vec2& g1, const Vec2& g2);

// The step t >= 0 that maximizes u(x + t d) over [0, t_max], where t_max keeps
// x + t d strictly interior and the displacement t ||d|| at most
// max_displacement. Zero when u does not strictly increase along d.
double preferred_step(const UtilitySpec& u, const Point& x, const Vec2& d,
                      const TriangularDomain& domain, double line_search_tol = 1e-9,
                      double max_displacement = std::numeric_limits<double>::infinity());

double preferred_step(const UtilitySpec& u, const Point& x, const Vec2& d,
                      const TriangularDomain& domain, const StepRule& rule);

// One mediator round: announce the bisector of the declared gradients, collect
// both preferred steps and move by the smaller one.
IdmStep idm_step(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x,
                 const TriangularDomain& domain, const IdmConfig& cfg = {});

// Iterates idm_step from x0. A run that exhausts max_iterations returns with
// converged == false.
NegotiationTrace idm_run(const UtilitySpec& u1, const UtilitySpec& u2, const Point& x0,
                         const TriangularDomain& domain, const IdmConfig& cfg = {});

}  // namespace negotiation

#endif  // NEGOTIATION_IDM_HPP_
