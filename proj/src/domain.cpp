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

#include "negotiation/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace negotiation {

namespace {

std::string describe(const Point& x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_defined(const UtilitySpec& u, const Point& x) {
  if (!all_finite(x)) throw DomainError("non-finite point " + describe(x));
  if (u.a1 > 0.0 && !(x[0] > 0.0))
    throw DomainError("constraint x1 > 0 violated at " + describe(x));
  if (u.a2 > 0.0 && !(x[1] > 0.0))
    throw DomainError("constraint x2 > 0 violated at " + describe(x));
  if (u.a3 > 0.0 && !(u.k - x[0] - x[1] > 0.0))
    throw DomainError("constraint x1 + x2 < k violated at " + describe(x));
}

}  // namespace

TriangularDomain::TriangularDomain(double k, double interior_margin)
    : k_(k), margin_(interior_margin < 0.0 ? 1e-9 * k : interior_margin) {
  if (!(k_ > 0.0) || !std::isfinite(k_)) throw ConfigError("domain requires k > 0");
  if (!(margin_ > 0.0) || !(margin_ < k_ / 100.0))
    throw ConfigError("interior margin must lie in (0, k/100)");
}

bool TriangularDomain::contains(const Point& x) const {
  const Vec<3> s = slacks(x);
  return s[0] >= 0.0 && s[1] >= 0.0 && s[2] >= 0.0;
}

bool TriangularDomain::contains_strictly(const Point& x) const {
  const Vec<3> s = slacks(x);
  return s[0] >= margin_ && s[1] >= margin_ && s[2] >= margin_;
}

double TriangularDomain::max_interior_step(const Point& x, const Vec2& d) const {
  // Each slack is affine in t: s_i(t) = s_i + t * rate_i.
  const Vec<3> s = slacks(x);
  const Vec<3> rate{d[0], d[1], -d[0] - d[1]};
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i) {
    if (rate[i] < 0.0) t = std::min(t, (s[i] - margin_) / -rate[i]);
  }
  return std::max(t, 0.0);
}

UtilitySpec::UtilitySpec(double a1_, double a2_, double a3_, double k_)
    : a1(a1_), a2(a2_), a3(a3_), k(k_) {
  if (!(a1 >= 0.0 && a2 >= 0.0 && a3 >= 0.0) || !std::isfinite(a1 + a2 + a3))
    throw ConfigError("utility coefficients must be finite and nonnegative");
  if (a1 + a2 + a3 <= 0.0) throw ConfigError("utility needs a positive coefficient");
  if (!(k > 0.0)) throw ConfigError("utility requires k > 0");
}

double UtilitySpec::value(const Point& x) const {
  check_defined(*this, x);
  double v = 0.0;
  if (a1 > 0.0) v += a1 * std::log(x[0]);
  if (a2 > 0.0) v += a2 * std::log(x[1]);
  if (a3 > 0.0) v += a3 * std::log(k - x[0] - x[1]);
  return v;
}

Vec2 UtilitySpec::gradient(const Point& x) const {
  check_defined(*this, x);
  const double shared = a3 > 0.0 ? a3 / (k - x[0] - x[1]) : 0.0;
  return {(a1 > 0.0 ? a1 / x[0] : 0.0) - shared, (a2 > 0.0 ? a2 / x[1] : 0.0) - shared};
}

bool UtilitySpec::is_perfect_competition() const {
  return (a1 > 0.0 && a2 == 0.0) || (a1 == 0.0 && a2 > 0.0);
}

bool contains(const TriangularDomain& domain, const Point& x) { return domain.contains(x); }

bool contains_strictly(const TriangularDomain& domain, const Point& x) {
  return domain.contains_strictly(x);
}

double utility_value(const UtilitySpec& u, const Point& x) { return u.value(x); }

Vec2 utility_gradient(const UtilitySpec& u, const Point& x) { return u.gradient(x); }

Point bliss_point(const UtilitySpec& u) {
  if (!u.is_perfect_competition())
    throw UnsupportedShapeError("bliss point needs exactly one of a1, a2 equal to zero");
  // Along the own axis the utility is a ln t + a3 ln(k - t), maximized at
  // t = a k / (a + a3).
  if (u.a2 == 0.0) return {u.a1 * u.k / (u.a1 + u.a3), 0.0};
  return {0.0, u.a2 * u.k / (u.a2 + u.a3)};
}

ParetoSegment pareto_frontier(const UtilitySpec& u1, const UtilitySpec& u2) {
  return {bliss_point(u1), bliss_point(u2)};
}

double distance_to_frontier(const ParetoSegment& f, const Point& x) {
  const Vec2 seg = f.b2 - f.b1;
  const double len2 = dot(seg, seg);
  double t = len2 > 0.0 ? dot(x - f.b1, seg) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm(x - (f.b1 + t * seg));
}

Point frontier_point(const ParetoSegment& f, double s) { return (1.0 - s) * f.b1 + s * f.b2; }

}  // namespace negotiation
