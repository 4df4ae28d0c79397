// Copyright 2026 The fuzzykor Authors
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

// Reference computations used by the tests. Deliberately written along
// different routes from the library (log-gamma weights, dense series, brute
// force pair scans) so agreement is evidence rather than an echo.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// C(n, j) x^j (1-x)^(n-j) via log-gamma in long double.
inline long double binomial_weight(std::uint64_t n, std::uint64_t j, long double x) {
  if (x == 0.0L) return j == 0 ? 1.0L : 0.0L;
  if (x == 1.0L) return j == n ? 1.0L : 0.0L;
  const long double lw = std::lgamma(static_cast<long double>(n) + 1) -
                         std::lgamma(static_cast<long double>(j) + 1) -
                         std::lgamma(static_cast<long double>(n - j) + 1) +
                         j * std::log(x) + (n - j) * std::log1p(-x);
  return std::exp(lw);
}

// B_n(g; x) by direct summation over every j.
template <typename G>
long double bernstein(std::uint64_t n, G g, long double x) {
  long double s = 0.0L;
  for (std::uint64_t j = 0; j <= n; ++j) {
    s += binomial_weight(n, j, x) * g(static_cast<long double>(j) / n);
  }
  return s;
}

inline bool is_cube(std::uint64_t n) {
  for (std::uint64_t m = 1; m * m * m <= n; ++m) {
    if (m * m * m == n) return true;
  }
  return false;
}

// (1 - t) sum_{n>=1} [n is a cube] t^(n-1), scanning every n until the
// remaining mass t^n / (1 - t) is negligible.
inline long double cube_mean_dense(long double t) {
  long double s = 0.0L, pw = 1.0L;  // pw = t^(n-1)
  std::uint64_t next_m = 1;
  for (std::uint64_t n = 1;; ++n) {
    if (n == next_m * next_m * next_m) {
      s += pw;
      ++next_m;
    }
    pw *= t;
    if (pw / (1.0L - t) < 1e-18L) break;
  }
  return (1.0L - t) * s;
}

// (1 - t) sum_{n>=1} t^(n-1) / n = -ln(1 - t) (1 - t) / t, summed densely.
inline long double abel_harmonic_dense(long double t) {
  long double s = 0.0L, pw = 1.0L;
  for (std::uint64_t n = 1;; ++n) {
    s += pw / n;
    pw *= t;
    if (pw / (1.0L - t) < 1e-18L) break;
  }
  return (1.0L - t) * s;
}

// sqrt(1/4 (1 - t) sum t^(n-1) / n): gamma(t) for Bernstein under Abel weights.
inline double gamma_bernstein(double t) {
  return static_cast<double>(std::sqrt(0.25L * abel_harmonic_dense(t)));
}

// Random triangular fuzzy number parameters a <= b <= c.
struct Tri {
  double a, b, c;
};

inline Tri random_tri(std::mt19937_64& rng, double spread = 10.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::uniform_real_distribution<double> w(0.0, spread / 2);
  const double b = u(rng);
  return {b - w(rng), b, b + w(rng)};
}

// Cut of a triangular number at level alpha.
inline std::pair<double, double> tri_cut(const Tri& x, double alpha) {
  return {x.a + alpha * (x.b - x.a), x.c - alpha * (x.c - x.b)};
}

// sup_alpha Hausdorff distance between two triangular numbers, by scanning
// a dense alpha set (the extremes sit at alpha in {0, 1} for affine cuts).
inline double tri_distance(const Tri& x, const Tri& y) {
  double d = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double alpha = k / 1000.0;
    const auto [xl, xh] = tri_cut(x, alpha);
    const auto [yl, yh] = tri_cut(y, alpha);
    d = std::max({d, std::fabs(xl - yl), std::fabs(xh - yh)});
  }
  return d;
}

// max |g(z) - g(x)| over grid pairs with |z - x| <= delta, all pairs scanned.
template <typename G>
double modulus_bruteforce(G g, const std::vector<double>& pts, double delta) {
  double w = 0.0;
  for (double x : pts) {
    for (double z : pts) {
      if (std::fabs(z - x) <= delta * (1 + 1e-12)) w = std::max(w, std::fabs(g(z) - g(x)));
    }
  }
  return w;
}

}  // namespace oracle
