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

#ifndef NEGOTIATION_DOMAIN_HPP_
#define NEGOTIATION_DOMAIN_HPP_

#include <limits>

#include "negotiation/errors.hpp"
#include "negotiation/vec.hpp"

namespace negotiation {

// The triangle {x1 >= 0, x2 >= 0, x1 + x2 <= k}.
//
// `interior_margin` is the slack every constraint must keep for a point to be
// strictly interior. Log utilities diverge on the boundary, so line searches
// never leave the strict interior.
class TriangularDomain {
 public:
  // margin < 0 selects the default margin 1e-9 * k.
  explicit TriangularDomain(double k, double interior_margin = -1.0);

  double k() const { return k_; }
  double interior_margin() const { return margin_; }

  // Slacks of the three linear constraints: x1, x2 and k - x1 - x2.
  Vec<3> slacks(const Point& x) const { return {x[0], x[1], k_ - x[0] - x[1]}; }

  bool contains(const Point& x) const;
  bool contains_strictly(const Point& x) const;

  // Largest t >= 0 with x + t d still strictly interior. Infinite when no
  // constraint is approached. Requires x strictly interior.
  double max_interior_step(const Point& x, const Vec2& d) const;

 private:
  double k_;
  double margin_;
};

// u(x) = a1 ln x1 + a2 ln x2 + a3 ln(k - x1 - x2).
//
// Terms with a zero coefficient are dropped, so the utility is defined on the
// open set where each positive-coefficient log argument is positive.
struct UtilitySpec {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  double k = 1.0;

  UtilitySpec() = default;
  UtilitySpec(double a1, double a2, double a3, double k);

  // Party 1 under perfect competition: (1, 0, beta).
  static UtilitySpec own_first(double beta, double k) { return {1.0, 0.0, beta, k}; }
  // Party 2 under perfect competition: (0, 1, beta).
  static UtilitySpec own_second(double beta, double k) { return {0.0, 1.0, beta, k}; }

  double value(const Point& x) const;
  Vec2 gradient(const Point& x) const;

  // Exactly one of a1, a2 is zero and the other is positive.
  bool is_perfect_competition() const;

  friend bool operator==(const UtilitySpec&, const UtilitySpec&) = default;
};

// The efficient frontier as the segment between the parties' bliss points.
struct ParetoSegment {
  Point b1;
  Point b2;
};

bool contains(const TriangularDomain& domain, const Point& x);
bool contains_strictly(const TriangularDomain& domain, const Point& x);

// Throws DomainError naming the violated constraint.
double utility_value(const UtilitySpec& u, const Point& x);
Vec2 utility_gradient(const UtilitySpec& u, const Point& x);

// Maximizer of a perfect-competition utility over the triangle:
// (k / (1 + a3/a1), 0) when a2 == 0, and the mirror image when a1 == 0.
Point bliss_point(const UtilitySpec& u);

ParetoSegment pareto_frontier(const UtilitySpec& u1, const UtilitySpec& u2);

// Euclidean point-to-segment distance.
double distance_to_frontier(const ParetoSegment& f, const Point& x);

// Point at parameter s in [0, 1] along the segment from b1 to b2.
Point frontier_point(const ParetoSegment& f, double s);

}  // namespace negotiation

#endif  // NEGOTIATION_DOMAIN_HPP_
