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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fuzzykor/fuzzy_function.hpp"
#include "fuzzykor/operators.hpp"
#include "fuzzykor/summability.hpp"

namespace fuzzykor {

struct KorovkinRow {
  double t_or_n = 0.0;
  double norm_e0 = 0.0;
  double norm_e1 = 0.0;
  double norm_e2 = 0.0;
  double dstar = 0.0;
  double gamma_t = 0.0;
  double omega_at_gamma = 0.0;
  double bound_rhs = 0.0;
  std::uint64_t n_used = 0;

  friend bool operator==(const KorovkinRow&, const KorovkinRow&) = default;
};

struct KorovkinReport {
  std::string experiment;
  std::string operator_name;
  std::string method_name;
  std::vector<KorovkinRow> rows;

  friend bool operator==(const KorovkinReport&, const KorovkinReport&) = default;
};

// Quantities of the modulus-of-continuity rate bound at one t:
//   D* <= e0_norm * omega + 2 omega + M * e0_norm = rhs,
// with omega = w^F(f; gamma_t). The K-form K (e0_norm omega + omega + e0_norm),
// K = max{M, 2}, is reported alongside.
struct RateBundle {
  double t = 0.0;
  double gamma_t = 0.0;
  double omega = 0.0;
  double e0_norm = 0.0;
  double M = 0.0;
  double rhs = 0.0;
  double k_constant = 0.0;
  double rhs_k_form = 0.0;
  double dstar = 0.0;
  std::uint64_t n_used = 0;
  bool verified = false;
};

inline constexpr double kRateSlack = 1e-9;

struct ExperimentSettings {
  AlphaGrid alpha = AlphaGrid::uniform(kDefaultAlphaIntervals);
  DomainGrid domain = DomainGrid::uniform(0.0, 1.0, kDefaultDomainPoints);
  TruncationPolicy policy;
};

std::vector<double> default_t_list();
// 1..100 together with the cubes m^3, m <= 10.
std::vector<std::uint64_t> default_n_list();

// Korovkin norms ||T_n(e_i) - e_i|| per n, plus D*(T_n f, f) and the rate
// quantities for a single operator (gamma^2 = ||T_n((z - x)^2; x)||).
KorovkinReport run_classical(const FuzzyOperatorFamily& family, const FuzzyFunction& f,
                             std::span<const std::uint64_t> n_list,
                             const ExperimentSettings& settings);

// The same quantities for the summed means at each t (strictly increasing,
// inside (0, 1)).
KorovkinReport run_summability(const FuzzyOperatorFamily& family,
                               const FuzzyFunction& f, const PowerSeriesMethod& method,
                               std::span<const double> t_list,
                               const ExperimentSettings& settings);

std::vector<RateBundle> run_rate(const FuzzyOperatorFamily& family,
                                 const FuzzyFunction& f, const PowerSeriesMethod& method,
                                 std::span<const double> t_list,
                                 const ExperimentSettings& settings);

enum class ReportFormat { kCsv, kJson };

ReportFormat parse_format(const std::string& name);

// CSV header: experiment,operator,method,t_or_n,norm_e0,norm_e1,norm_e2,dstar,
// gamma_t,omega_at_gamma,bound_rhs,n_used. Numbers use %.17g.
void write_reports(std::span<const KorovkinReport> reports, ReportFormat format,
                   std::ostream& out);
// Writes to `path`; I/O failures raise an Error naming the path.
void emit_report(std::span<const KorovkinReport> reports, ReportFormat format,
                 const std::string& path);
std::vector<KorovkinReport> read_reports_json(const std::string& text);

void write_rate_bundles(std::span<const RateBundle> bundles, ReportFormat format,
                        std::ostream& out);
void emit_rate_bundles(std::span<const RateBundle> bundles, ReportFormat format,
                       const std::string& path);

// Randomised check of the fuzzy-number invariants: validity of generated
// numbers and of add/scale results, metric axioms of D, translation
// invariance, homogeneity and the partial-order laws.
struct CoreCheckSummary {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> messages;  // first few failures
};

CoreCheckSummary check_fuzzy_core(std::uint64_t seed, std::uint64_t trials,
                                  const AlphaGrid& grid);

}  // namespace fuzzykor
