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

#include "fuzzykor/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "fuzzykor/error.hpp"
#include "numfmt.hpp"

namespace fuzzykor {

namespace {

using detail::format_double;

struct RateTerms {
  double gamma = 0.0;
  double omega = 0.0;
  double M = 0.0;
  double rhs = 0.0;
  double k_constant = 0.0;
  double rhs_k_form = 0.0;
};

bool is_constant(std::span<const FuzzyNumber> table) {
  for (const auto& v : table) {
    if (!(v == table.front())) return false;
  }
  return true;
}

RateTerms rate_terms(double second_moment_norm, double e0_norm,
                     std::span<const FuzzyNumber> table, const DomainGrid& grid) {
  RateTerms r;
  r.gamma = std::sqrt(std::max(0.0, second_moment_norm));
  if (r.gamma > 0.0) {
    r.omega = modulus_fuzzy(table, r.gamma, grid);
  } else if (!is_constant(table)) {
    throw Error(ErrorCode::kDegenerateDelta,
                "gamma(t) = 0 for a nonconstant function; the modulus at delta = 0 "
                "is undefined");
  }
  r.M = fuzzy_sup_bound(table);
  r.rhs = e0_norm * r.omega + 2.0 * r.omega + r.M * e0_norm;
  r.k_constant = std::max(r.M, 2.0);
  r.rhs_k_form = r.k_constant * (e0_norm * r.omega + r.omega + e0_norm);
  return r;
}

void require_increasing_t(std::span<const double> t_list) {
  if (t_list.empty()) throw_invalid("t list is empty");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] > 0.0 && t_list[i] < 1.0)) {
      throw_invalid("t must lie in (0, 1), got " + format_double(t_list[i]));
    }
    if (i > 0 && !(t_list[i] > t_list[i - 1])) {
      throw_invalid("t values must be strictly increasing");
    }
  }
}

void require_matching_domain(const OperatorFamily& base, const FuzzyFunction& f,
                             const ExperimentSettings& s) {
  if (!(f.grid() == s.alpha)) {
    throw_invalid("function alpha grid differs from the experiment alpha grid");
  }
  if (s.domain.a() < base.a() || s.domain.b() > base.b()) {
    throw_invalid("domain grid leaves the operator family's interval");
  }
}

struct SummedEvaluation {
  KorovkinRow row;
  RateBundle bundle;
};

SummedEvaluation evaluate_summed(const FuzzyOperatorFamily& family,
                                 const FuzzyFunction& f,
                                 const PowerSeriesMethod& method, double t,
                                 const ExperimentSettings& s,
                                 std::span<const FuzzyNumber> f_table) {
  const OperatorFamily& base = family.base();
  const DomainGrid& grid = s.domain;
  const double width = grid.b() - grid.a();
  const double f_bound = fuzzy_sup_bound(f_table);

  std::vector<Integrand> integrands;
  for (int i = 0; i < 3; ++i) {
    integrands.push_back(Integrand::scalar(test_function(i), sup_norm(test_function(i), grid)));
  }
  integrands.push_back(Integrand::squared_distance(width * width));
  const bool boundary = f.is_level_affine();
  integrands.push_back(boundary ? Integrand::fuzzy_boundary(f, f_bound)
                                : Integrand::fuzzy_levels(f, f_bound));

  const MeanTable m = summed_means(base, integrands, grid.points(), t, method, s.policy);

  SummedEvaluation out;
  KorovkinRow& row = out.row;
  row.t_or_n = t;
  row.n_used = m.terms;
  double* norms[] = {&row.norm_e0, &row.norm_e1, &row.norm_e2};
  for (int i = 0; i < 3; ++i) {
    const ScalarFunction e = test_function(i);
    double sup = 0.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      sup = std::max(sup, std::fabs(m.values[i][p] - e(grid[p])));
    }
    *norms[i] = sup;
  }
  const double second_moment = sup_norm(m.values[3]);

  const AlphaGrid& alpha = f.grid();
  for (std::size_t p = 0; p < grid.size(); ++p) {
    std::vector<Interval> cuts(alpha.size());
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (boundary) {
        const double a = alpha[k];
        cuts[k] = {std::lerp(m.values[4][p], m.values[6][p], a),
                   std::lerp(m.values[5][p], m.values[7][p], a)};
      } else {
        cuts[k] = {m.values[4 + 2 * k][p], m.values[5 + 2 * k][p]};
      }
    }
    repair_nesting(cuts);
    row.dstar = std::max(row.dstar, metric_D(FuzzyNumber(alpha, std::move(cuts)), f_table[p]));
  }

  const RateTerms r = rate_terms(second_moment, row.norm_e0, f_table, grid);
  row.gamma_t = r.gamma;
  row.omega_at_gamma = r.omega;
  row.bound_rhs = r.rhs;

  out.bundle = {t,         r.gamma, r.omega,      row.norm_e0, r.M,      r.rhs,
                r.k_constant, r.rhs_k_form, row.dstar, m.terms,
                row.dstar <= r.rhs + kRateSlack};
  return out;
}

KorovkinReport make_report(std::string experiment, const FuzzyOperatorFamily& family,
                           std::string method) {
  KorovkinReport r;
  r.experiment = std::move(experiment);
  r.operator_name = std::string(family.base().name());
  r.method_name = std::move(method);
  return r;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

}  // namespace

std::vector<double> default_t_list() { return {0.9, 0.99, 0.999}; }

std::vector<std::uint64_t> default_n_list() {
  std::vector<std::uint64_t> n;
  for (std::uint64_t i = 1; i <= 100; ++i) n.push_back(i);
  for (std::uint64_t m = 5; m <= 10; ++m) n.push_back(m * m * m);
  return n;
}

KorovkinReport run_classical(const FuzzyOperatorFamily& family, const FuzzyFunction& f,
                             std::span<const std::uint64_t> n_list,
                             const ExperimentSettings& settings) {
  if (n_list.empty()) throw_invalid("n list is empty");
  const OperatorFamily& base = family.base();
  require_matching_domain(base, f, settings);
  const DomainGrid& grid = settings.domain;
  const auto f_table = tabulate(f, grid);

  KorovkinReport report = make_report("classical", family, "none");
  for (std::uint64_t n : n_list) {
    if (n == 0) throw_invalid("operator index n must be >= 1");
    KorovkinRow row;
    row.t_or_n = static_cast<double>(n);
    row.n_used = n;
    row.norm_e0 = korovkin_norm(base, n, 0, grid);
    row.norm_e1 = korovkin_norm(base, n, 1, grid);
    row.norm_e2 = korovkin_norm(base, n, 2, grid);

    const auto lifted = family.apply_all(n, f, grid.points());
    row.dstar = metric_Dstar(lifted, f_table);

    double second_moment = 0.0;
    for (double x : grid.points()) {
      const ScalarFunction phi = [x](double z) { return (z - x) * (z - x); };
      second_moment = std::max(second_moment, std::fabs(base.apply(n, phi, x)));
    }
    const RateTerms r = rate_terms(second_moment, row.norm_e0, f_table, grid);
    row.gamma_t = r.gamma;
    row.omega_at_gamma = r.omega;
    row.bound_rhs = r.rhs;
    report.rows.push_back(row);
  }
  return report;
}

KorovkinReport run_summability(const FuzzyOperatorFamily& family,
                               const FuzzyFunction& f, const PowerSeriesMethod& method,
                               std::span<const double> t_list,
                               const ExperimentSettings& settings) {
  require_increasing_t(t_list);
  require_matching_domain(family.base(), f, settings);
  const auto f_table = tabulate(f, settings.domain);
  KorovkinReport report = make_report("summability", family, method.name());
  for (double t : t_list) {
    report.rows.push_back(evaluate_summed(family, f, method, t, settings, f_table).row);
  }
  return report;
}

std::vector<RateBundle> run_rate(const FuzzyOperatorFamily& family,
                                 const FuzzyFunction& f, const PowerSeriesMethod& method,
                                 std::span<const double> t_list,
                                 const ExperimentSettings& settings) {
  require_increasing_t(t_list);
  require_matching_domain(family.base(), f, settings);
  const auto f_table = tabulate(f, settings.domain);
  std::vector<RateBundle> bundles;
  for (double t : t_list) {
    bundles.push_back(evaluate_summed(family, f, method, t, settings, f_table).bundle);
  }
  return bundles;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw_invalid("unknown format '" + name + "' (valid: csv, json)");
}

void write_reports(std::span<const KorovkinReport> reports, ReportFormat format,
                   std::ostream& out) {
  if (format == ReportFormat::kCsv) {
    out << "experiment,operator,method,t_or_n,norm_e0,norm_e1,norm_e2,dstar,"
           "gamma_t,omega_at_gamma,bound_rhs,n_used\n";
    for (const auto& r : reports) {
      for (const auto& row : r.rows) {
        out << r.experiment << ',' << r.operator_name << ',' << r.method_name << ','
            << format_double(row.t_or_n) << ',' << format_double(row.norm_e0) << ','
            << format_double(row.norm_e1) << ',' << format_double(row.norm_e2) << ','
            << format_double(row.dstar) << ',' << format_double(row.gamma_t) << ','
            << format_double(row.omega_at_gamma) << ','
            << format_double(row.bound_rhs) << ',' << row.n_used << '\n';
      }
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["experiment"] = r.experiment;
    jr["operator"] = r.operator_name;
    jr["method"] = r.method_name;
    jr["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
      jr["rows"].push_back({{"t_or_n", row.t_or_n},
                            {"norm_e0", row.norm_e0},
                            {"norm_e1", row.norm_e1},
                            {"norm_e2", row.norm_e2},
                            {"dstar", row.dstar},
                            {"gamma_t", row.gamma_t},
                            {"omega_at_gamma", row.omega_at_gamma},
                            {"bound_rhs", row.bound_rhs},
                            {"n_used", row.n_used}});
    }
    doc["reports"].push_back(std::move(jr));
  }
  out << doc.dump(2) << '\n';
}

void emit_report(std::span<const KorovkinReport> reports, ReportFormat format,
                 const std::string& path) {
  auto out = open_output(path);
  write_reports(reports, format, out);
  finish_output(out, path);
}

std::vector<KorovkinReport> read_reports_json(const std::string& text) {
  std::vector<KorovkinReport> reports;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& jr : doc.at("reports")) {
      KorovkinReport r;
      r.experiment = jr.at("experiment").get<std::string>();
      r.operator_name = jr.at("operator").get<std::string>();
      r.method_name = jr.at("method").get<std::string>();
      for (const auto& jrow : jr.at("rows")) {
        KorovkinRow row;
        row.t_or_n = jrow.at("t_or_n").get<double>();
        row.norm_e0 = jrow.at("norm_e0").get<double>();
        row.norm_e1 = jrow.at("norm_e1").get<double>();
        row.norm_e2 = jrow.at("norm_e2").get<double>();
        row.dstar = jrow.at("dstar").get<double>();
        row.gamma_t = jrow.at("gamma_t").get<double>();
        row.omega_at_gamma = jrow.at("omega_at_gamma").get<double>();
        row.bound_rhs = jrow.at("bound_rhs").get<double>();
        row.n_used = jrow.at("n_used").get<std::uint64_t>();
        r.rows.push_back(row);
      }
      reports.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw_invalid(std::string("malformed report JSON: ") + e.what());
  }
  return reports;
}

void write_rate_bundles(std::span<const RateBundle> bundles, ReportFormat format,
                        std::ostream& out) {
  if (format == ReportFormat::kCsv) {
    out << "t,gamma_t,omega,e0_norm,M,rhs,k_constant,rhs_k_form,dstar,n_used,verified\n";
    for (const auto& b : bundles) {
      out << format_double(b.t) << ',' << format_double(b.gamma_t) << ','
          << format_double(b.omega) << ',' << format_double(b.e0_norm) << ','
          << format_double(b.M) << ',' << format_double(b.rhs) << ','
          << format_double(b.k_constant) << ',' << format_double(b.rhs_k_form) << ','
          << format_double(b.dstar) << ',' << b.n_used << ','
          << (b.verified ? "true" : "false") << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& b : bundles) {
    doc.push_back({{"t", b.t},
                   {"gamma_t", b.gamma_t},
                   {"omega", b.omega},
                   {"e0_norm", b.e0_norm},
                   {"M", b.M},
                   {"rhs", b.rhs},
                   {"k_constant", b.k_constant},
                   {"rhs_k_form", b.rhs_k_form},
                   {"dstar", b.dstar},
                   {"n_used", b.n_used},
                   {"verified", b.verified}});
  }
  out << nlohmann::ordered_json{{"rate", doc}}.dump(2) << '\n';
}

void emit_rate_bundles(std::span<const RateBundle> bundles, ReportFormat format,
                       const std::string& path) {
  auto out = open_output(path);
  write_rate_bundles(bundles, format, out);
  finish_output(out, path);
}

CoreCheckSummary check_fuzzy_core(std::uint64_t seed, std::uint64_t trials,
                                  const AlphaGrid& grid) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto random_number = [&](double lo_shift) {
    std::vector<double> v(2 * grid.size());
    for (double& c : v) c = coord(rng);
    std::sort(v.begin(), v.end());
    std::vector<Interval> cuts(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      cuts[k] = {v[k] + lo_shift, v[v.size() - 1 - k] + lo_shift};
    }
    return FuzzyNumber(grid, std::move(cuts));
  };
  auto nonnegative_number = [&] {
    std::vector<double> v(2 * grid.size());
    for (double& c : v) c = 5.0 * unit(rng);
    std::sort(v.begin(), v.end());
    std::vector<Interval> cuts(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) cuts[k] = {v[k], v[v.size() - 1 - k]};
    return FuzzyNumber(grid, std::move(cuts));
  };

  CoreCheckSummary summary;
  auto check = [&](bool ok, std::uint64_t trial, const char* what) {
    if (ok) return;
    ++summary.failures;
    if (summary.messages.size() < 10) {
      summary.messages.push_back("trial " + std::to_string(trial) + ": " + what);
    }
  };

  constexpr double kTol = 1e-12;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    ++summary.trials;
    const FuzzyNumber x = random_number(0.0);
    const FuzzyNumber y = random_number(coord(rng));
    const FuzzyNumber z = random_number(0.0);
    const double lambda = 3.0 * unit(rng);

    check(validate(x).empty(), trial, "generated number invalid");
    check(validate(add(x, y)).empty(), trial, "add broke validity");
    check(validate(scale(lambda, x)).empty(), trial, "scale broke validity");
    check(validate(scale(-lambda, x)).empty(), trial, "negative scale broke validity");

    const double dxy = metric_D(x, y), dyx = metric_D(y, x);
    check(metric_D(x, x) == 0.0, trial, "D(x, x) != 0");
    check(dxy >= 0.0, trial, "D negative");
    check((dxy == 0.0) == (x == y), trial, "D(x, y) = 0 without level-wise equality");
    check(dxy == dyx, trial, "D not symmetric");
    check(metric_D(x, z) <= dxy + metric_D(y, z) + kTol, trial, "triangle inequality");
    check(std::fabs(metric_D(add(x, z), add(y, z)) - dxy) <= kTol * (1.0 + dxy), trial,
          "translation invariance");
    check(std::fabs(metric_D(scale(lambda, x), scale(lambda, y)) - lambda * dxy) <=
              kTol * (1.0 + lambda * dxy),
          trial, "homogeneity");

    const FuzzyNumber upper = add(x, nonnegative_number());
    const FuzzyNumber top = add(upper, nonnegative_number());
    check(partial_leq(x, x), trial, "order not reflexive");
    check(partial_leq(x, upper) && partial_leq(upper, top) && partial_leq(x, top), trial,
          "order not transitive");
    check(!(partial_leq(x, y) && partial_leq(y, x)) || x == y, trial,
          "order not antisymmetric");
  }
  return summary;
}

}  // namespace fuzzykor
