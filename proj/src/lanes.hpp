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

#pragma once

#include <cstddef>

namespace fuzzykor::detail {

// Four-lane sums. Fixed association order, so results are reproducible, and
// sum(w) == dot(w, 1) bit for bit.
inline double lane_dot(const double* w, const double* v, std::size_t len) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    s0 += w[k] * v[k];
    s1 += w[k + 1] * v[k + 1];
    s2 += w[k + 2] * v[k + 2];
    s3 += w[k + 3] * v[k + 3];
  }
  for (; k < len; ++k) s0 += w[k] * v[k];
  return (s0 + s1) + (s2 + s3);
}

inline double lane_sum(const double* w, std::size_t len) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    s0 += w[k];
    s1 += w[k + 1];
    s2 += w[k + 2];
    s3 += w[k + 3];
  }
  for (; k < len; ++k) s0 += w[k];
  return (s0 + s1) + (s2 + s3);
}

inline double lane_squared_distance(const double* w, const double* y, double x,
                             std::size_t len) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const double d0 = y[k] - x, d1 = y[k + 1] - x, d2 = y[k + 2] - x,
                 d3 = y[k + 3] - x;
    s0 += w[k] * (d0 * d0);
    s1 += w[k + 1] * (d1 * d1);
    s2 += w[k + 2] * (d2 * d2);
    s3 += w[k + 3] * (d3 * d3);
  }
  for (; k < len; ++k) {
    const double d = y[k] - x;
    s0 += w[k] * (d * d);
  }
  return (s0 + s1) + (s2 + s3);
}

}  // namespace fuzzykor::detail
