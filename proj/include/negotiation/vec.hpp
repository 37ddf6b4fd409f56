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

#ifndef NEGOTIATION_VEC_HPP_
#define NEGOTIATION_VEC_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace negotiation {

// Small fixed-size real vector. Concrete negotiation types use N = 2, but
// nothing below assumes it.
template <std::size_t N>
struct Vec {
  std::array<double, N> c{};

  constexpr Vec() = default;
  template <typename... T>
    requires(sizeof...(T) == N)
  constexpr Vec(T... v) : c{static_cast<double>(v)...} {}

  static constexpr std::size_t size() { return N; }
  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec& operator+=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec& operator-=(const Vec& o) {
    for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  constexpr Vec& operator/=(double s) {
    for (auto& v : c) v /= s;
    return *this;
  }
  friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
  friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
  friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
  friend constexpr Vec operator/(Vec a, double s) { return a /= s; }
  friend constexpr bool operator==(const Vec&, const Vec&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Vec& v) {
    os << '(';
    for (std::size_t i = 0; i < N; ++i) os << (i ? ", " : "") << v.c[i];
    return os << ')';
  }
};

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t N>
double norm(const Vec<N>& a) {
  return std::sqrt(dot(a, a));
}

template <std::size_t N>
bool all_finite(const Vec<N>& a) {
  for (double v : a.c)
    if (!std::isfinite(v)) return false;
  return true;
}

using Vec2 = Vec<2>;

// A settlement candidate (x1, x2) in the negotiation domain.
using Point = Vec2;

}  // namespace negotiation

#endif  // NEGOTIATION_VEC_HPP_
