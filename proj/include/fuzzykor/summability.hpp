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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzykor/fuzzy_function.hpp"
#include "fuzzykor/fuzzy_number.hpp"
#include "fuzzykor/operators.hpp"

namespace fuzzykor {

// Power-series summability method given by weights p_n >= 0 (p_1 > 0) and
// p(t) = sum_n p_n t^(n-1) with radius of convergence 1.
class PowerSeriesMethod {
 public:
  // p_n = 1, p(t) = 1 / (1 - t).
  static PowerSeriesMethod abel();
  // p_n = weights[n - 1], zero past the end of the list.
  static PowerSeriesMethod from_weights(std::string name, std::vector<double> weights);
  // One nonnegative real per line, first line > 0.
  static PowerSeriesMethod from_weight_file(const std::string& path);
  // "abel" or "weights:<file>".
  static PowerSeriesMethod from_spec(const std::string& spec);

  const std::string& name() const noexcept { return name_; }
  double weight(std::uint64_t n) const noexcept;
  double p_of_t(double t) const;
  // sum_{n <= N} p_n t^(n-1), summed directly.
  double partial_p(std::uint64_t terms, double t) const;
  // Returns n -> (sum_{m > n} p_m t^(m-1)) / p(t) for fixed t.
  std::function<double(std::uint64_t)> tail_ratio(double t) const;

  bool has_closed_form() const noexcept { return finite_.empty(); }
  // Whether sum p_n diverges. False for finite-support weight lists, which are
  // accepted but cannot satisfy the definition of a P-method.
  bool partial_sums_diverge() const noexcept { return finite_.empty(); }

 private:
  PowerSeriesMethod() = default;

  std::string name_;
  std::vector<double> finite_;  // empty for Abel
};

struct TruncationPolicy {
  double tol = 1e-8;
  std::uint64_t n_cap = 2'000'000;
  // Uniform bound B on |a_n|; discovered from the data when absent.
  std::optional<double> bound_hint;

  void validate() const;
};

struct SummationResult {
  double value = 0.0;
  std::uint64_t terms = 0;   // N
  double tail_bound = 0.0;   // certified bound on the truncation error
};

// Weighted mean sum_{n<=N} a_n p_n t^(n-1) / sum_{n<=N} p_n t^(n-1), with N
// the first index where 2 B tail_ratio(N) < tol. Dividing by the truncated
// p-sum reproduces constants exactly; the factor 2 covers the resulting
// change of normaliser. B is the policy hint, or else twice the running max
// of |a_n| (and then at least half of the p-mass must have been seen).
SummationResult transform_scalar(const std::function<double(std::uint64_t)>& a,
                                 double t, const PowerSeriesMethod& method,
                                 const TruncationPolicy& policy);

// (1 - t) / t * sum_{m >= 1} t^(m^3), the Abel mean of the cube indicator,
// truncated once the tail bound t^((M+1)^3) / t is below tol.
double cube_series(double t, double tol = 1e-12);

// One or more functions summed together through the operators. A fixed
// integrand has node values independent of the evaluation point; the
// squared-distance integrand is z -> (z - x)^2 at evaluation point x.
struct Integrand {
  enum class Kind { kFixed, kSquaredDistance };

  Kind kind = Kind::kFixed;
  std::size_t width = 1;
  std::function<void(double node, std::span<double> out)> eval;
  double bound = 1.0;  // sup over J of |each output|

  static Integrand scalar(ScalarFunction g, double bound);
  static Integrand squared_distance(double bound);
  // Outputs (support.lo, support.hi, core.lo, core.hi); needs a level-affine f.
  static Integrand fuzzy_boundary(const FuzzyFunction& f, double bound);
  // Outputs (lo_0, hi_0, lo_1, hi_1, ...) over every alpha level of f.
  static Integrand fuzzy_levels(const FuzzyFunction& f, double bound);
};

struct MeanTable {
  // values[output][i]: summed mean of that output at xs[i]; outputs are the
  // integrands' outputs concatenated in order.
  std::vector<std::vector<double>> values;
  std::uint64_t terms = 0;
  double tail_bound = 0.0;
};

// Number of terms the certificate needs for uniform bound B.
std::uint64_t terms_needed(double t, const PowerSeriesMethod& method,
                           const TruncationPolicy& policy, double bound,
                           double* tail_bound = nullptr);

// (1/P_N(t)) sum_{n<=N} p_n t^(n-1) T_n(g; x) for every integrand output and
// every x. N is shared; B is the policy hint or the family's unit-norm bound
// times the largest integrand bound. Summation over n is ascending and
// compensated, so results are deterministic.
MeanTable summed_means(const OperatorFamily& family,
                       std::span<const Integrand> integrands,
                       std::span<const double> xs, double t,
                       const PowerSeriesMethod& method,
                       const TruncationPolicy& policy);

struct FunctionTable {
  std::vector<double> values;  // one per grid point
  std::uint64_t terms = 0;
  double tail_bound = 0.0;
};

FunctionTable transform_function(const OperatorFamily& base, const ScalarFunction& g,
                                 double t, const PowerSeriesMethod& method,
                                 const TruncationPolicy& policy,
                                 const DomainGrid& grid);

enum class FuzzyRoute {
  kAuto,       // boundary route for level-affine functions, else all levels
  kAllLevels,  // transform every level endpoint separately
};

struct FuzzyMean {
  FuzzyNumber value;
  std::uint64_t terms = 0;
  double tail_bound = 0.0;
};

// The summed fuzzy mean at each x, assembled from endpoint-wise transforms.
// For a level-affine f only the support and core endpoints are transformed;
// linearity of the mean carries the interpolation in alpha through exactly.
std::vector<FuzzyNumber> transform_fuzzy_all(const FuzzyOperatorFamily& family,
                                             const FuzzyFunction& f, double t,
                                             const PowerSeriesMethod& method,
                                             const TruncationPolicy& policy,
                                             std::span<const double> xs,
                                             FuzzyRoute route = FuzzyRoute::kAuto,
                                             std::uint64_t* terms = nullptr);

FuzzyMean transform_fuzzy(const FuzzyOperatorFamily& family, const FuzzyFunction& f,
                          double t, const PowerSeriesMethod& method,
                          const TruncationPolicy& policy, double x,
                          FuzzyRoute route = FuzzyRoute::kAuto);

}  // namespace fuzzykor
