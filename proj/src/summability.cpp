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

#include "fuzzykor/summability.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

#include "fuzzykor/compensated.hpp"
#include "fuzzykor/error.hpp"
#include "lanes.hpp"
#include "numfmt.hpp"

namespace fuzzykor {

namespace {

void require_open_unit(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw_invalid("t must lie in (0, 1), got " + detail::format_double(t));
  }
}

double series_weight(const PowerSeriesMethod& m, std::uint64_t n, double t) {
  const double p = m.weight(n);
  if (p == 0.0) return 0.0;
  return p * std::pow(t, static_cast<double>(n - 1));
}

std::size_t total_width(std::span<const Integrand> integrands) {
  std::size_t w = 0;
  for (const auto& in : integrands) w += in.width;
  return w;
}

double function_bound(const FuzzyFunction& f) {
  const auto grid = DomainGrid::uniform(f.a(), f.b(), kDefaultDomainPoints);
  return fuzzy_sup_bound(tabulate(f, grid));
}

}  // namespace

PowerSeriesMethod PowerSeriesMethod::abel() {
  PowerSeriesMethod m;
  m.name_ = "abel";
  return m;
}

PowerSeriesMethod PowerSeriesMethod::from_weights(std::string name,
                                                  std::vector<double> weights) {
  if (weights.empty()) throw_invalid("weight list is empty");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw_invalid("weight p_" + std::to_string(i + 1) +
                    " must be a finite nonnegative number");
    }
  }
  if (!(weights.front() > 0.0)) throw_invalid("weight p_1 must be positive");
  PowerSeriesMethod m;
  m.name_ = std::move(name);
  m.finite_ = std::move(weights);
  return m;
}

PowerSeriesMethod PowerSeriesMethod::from_weight_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open weight file " + path);
  std::vector<double> weights;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      throw_invalid(path + ":" + std::to_string(lineno) + ": not a number");
    }
    if (line.find_first_not_of(" \t\r", used) != std::string::npos) {
      throw_invalid(path + ":" + std::to_string(lineno) + ": trailing characters");
    }
    weights.push_back(v);
  }
  return from_weights("weights:" + path, std::move(weights));
}

PowerSeriesMethod PowerSeriesMethod::from_spec(const std::string& spec) {
  if (spec == "abel") return abel();
  constexpr std::string_view kPrefix = "weights:";
  if (spec.rfind(kPrefix, 0) == 0 && spec.size() > kPrefix.size()) {
    return from_weight_file(spec.substr(kPrefix.size()));
  }
  throw_invalid("unknown method '" + spec + "' (valid: abel, weights:<file>)");
}

double PowerSeriesMethod::weight(std::uint64_t n) const noexcept {
  if (n == 0) return 0.0;
  if (finite_.empty()) return 1.0;
  return n <= finite_.size() ? finite_[n - 1] : 0.0;
}

double PowerSeriesMethod::p_of_t(double t) const {
  if (finite_.empty()) {
    if (!(t < 1.0)) throw_invalid("p(t) diverges for t >= 1");
    return 1.0 / (1.0 - t);
  }
  return partial_p(finite_.size(), t);
}

double PowerSeriesMethod::partial_p(std::uint64_t terms, double t) const {
  CompensatedSum s;
  for (std::uint64_t n = 1; n <= terms; ++n) s += series_weight(*this, n, t);
  return s.value();
}

std::function<double(std::uint64_t)> PowerSeriesMethod::tail_ratio(double t) const {
  if (finite_.empty()) {
    return [t](std::uint64_t n) { return std::pow(t, static_cast<double>(n)); };
  }
  // suffix[n] = sum_{m > n} p_m t^(m-1), for n = 0..L.
  const std::size_t len = finite_.size();
  auto suffix = std::make_shared<std::vector<double>>(len + 1, 0.0);
  CompensatedSum s;
  for (std::size_t n = len; n >= 1; --n) {
    s += series_weight(*this, n, t);
    (*suffix)[n - 1] = s.value();
  }
  return [suffix](std::uint64_t n) {
    if (n >= suffix->size()) return 0.0;
    return (*suffix)[n] / suffix->front();
  };
}

void TruncationPolicy::validate() const {
  if (!(tol > 0.0)) throw_invalid("tolerance must be positive");
  if (n_cap < 1) throw_invalid("n_cap must be at least 1");
  if (bound_hint && !(*bound_hint >= 0.0 && std::isfinite(*bound_hint))) {
    throw_invalid("bound hint must be finite and nonnegative");
  }
}

SummationResult transform_scalar(const std::function<double(std::uint64_t)>& a,
                                 double t, const PowerSeriesMethod& method,
                                 const TruncationPolicy& policy) {
  require_open_unit(t);
  policy.validate();
  const auto tail = method.tail_ratio(t);
  CompensatedSum num, den;
  double running_max = 0.0;
  double bound = 0.0;
  for (std::uint64_t n = 1; n <= policy.n_cap; ++n) {
    const double w = series_weight(method, n, t);
    const double an = a(n);
    running_max = std::max(running_max, std::fabs(an));
    if (w != 0.0) {
      num += an * w;
      den += w;
    }
    const double ratio = tail(n);
    const double b = policy.bound_hint ? *policy.bound_hint : 2.0 * running_max;
    bound = 2.0 * b * ratio;
    if (!policy.bound_hint && ratio > 0.5) continue;
    if (bound < policy.tol) return {num.value() / den.value(), n, bound};
  }
  throw TruncationError("summability mean at t = " + detail::format_double(t) +
                            " did not reach tol " + detail::format_double(policy.tol) +
                            " within n_cap = " + std::to_string(policy.n_cap) +
                            " terms (achieved bound " + detail::format_double(bound) + ")",
                        bound);
}

double cube_series(double t, double tol) {
  require_open_unit(t);
  if (!(tol > 0.0)) throw_invalid("tolerance must be positive");
  const double log_t = std::log(t);
  CompensatedSum s;
  for (double m = 1.0;; m += 1.0) {
    s += std::exp(m * m * m * log_t);
    const double next = m + 1.0;
    // (1-t)/t * sum_{k > m} t^(k^3) <= t^((m+1)^3 - 1)
    if (std::exp((next * next * next - 1.0) * log_t) < tol) break;
  }
  return (1.0 - t) / t * s.value();
}

Integrand Integrand::scalar(ScalarFunction g, double bound) {
  Integrand in;
  in.width = 1;
  in.bound = bound;
  in.eval = [g = std::move(g)](double y, std::span<double> out) { out[0] = g(y); };
  return in;
}

Integrand Integrand::squared_distance(double bound) {
  Integrand in;
  in.kind = Kind::kSquaredDistance;
  in.width = 1;
  in.bound = bound;
  return in;
}

Integrand Integrand::fuzzy_boundary(const FuzzyFunction& f, double bound) {
  if (!f.is_level_affine()) {
    throw_invalid("boundary integrand needs a level-affine fuzzy function");
  }
  Integrand in;
  in.width = 4;
  in.bound = bound;
  in.eval = [f](double y, std::span<double> out) {
    const auto [support, core] = f.boundary(y);
    out[0] = support.lo;
    out[1] = support.hi;
    out[2] = core.lo;
    out[3] = core.hi;
  };
  return in;
}

Integrand Integrand::fuzzy_levels(const FuzzyFunction& f, double bound) {
  Integrand in;
  in.width = 2 * f.grid().size();
  in.bound = bound;
  in.eval = [f](double y, std::span<double> out) {
    const FuzzyNumber v = f(y);
    for (std::size_t k = 0; k < v.size(); ++k) {
      out[2 * k] = v.cut(k).lo;
      out[2 * k + 1] = v.cut(k).hi;
    }
  };
  return in;
}

std::uint64_t terms_needed(double t, const PowerSeriesMethod& method,
                           const TruncationPolicy& policy, double bound,
                           double* tail_bound) {
  require_open_unit(t);
  policy.validate();
  const auto tail = method.tail_ratio(t);
  std::uint64_t start = 1;
  if (method.has_closed_form() && bound > 0.0) {
    // Abel: 2 B t^N < tol  <=>  N > log(tol / 2B) / log t.
    const double guess = std::log(policy.tol / (2.0 * bound)) / std::log(t);
    if (guess > 2.0) start = static_cast<std::uint64_t>(std::min(guess - 2.0, 1e18));
  }
  double achieved = 0.0;
  for (std::uint64_t n = std::min(start, policy.n_cap); n <= policy.n_cap; ++n) {
    achieved = 2.0 * bound * tail(n);
    if (achieved < policy.tol) {
      if (tail_bound) *tail_bound = achieved;
      return n;
    }
    if (n == policy.n_cap) break;
  }
  throw TruncationError("summability mean at t = " + detail::format_double(t) +
                            " needs more than n_cap = " + std::to_string(policy.n_cap) +
                            " terms for tol " + detail::format_double(policy.tol) +
                            " (achieved bound " + detail::format_double(achieved) + ")",
                        achieved);
}

MeanTable summed_means(const OperatorFamily& family,
                       std::span<const Integrand> integrands,
                       std::span<const double> xs, double t,
                       const PowerSeriesMethod& method,
                       const TruncationPolicy& policy) {
  require_open_unit(t);
  double integrand_bound = 0.0;
  for (const auto& in : integrands) integrand_bound = std::max(integrand_bound, in.bound);
  const double bound = policy.bound_hint ? *policy.bound_hint
                                         : family.unit_norm_bound() * integrand_bound;
  MeanTable table;
  table.terms = terms_needed(t, method, policy, bound, &table.tail_bound);
  const std::uint64_t terms = table.terms;

  std::vector<double> coef(terms + 1, 0.0);
  CompensatedSum den_sum;
  for (std::uint64_t n = 1; n <= terms; ++n) {
    coef[n] = series_weight(method, n, t);
    den_sum += coef[n];
  }
  const double den = den_sum.value();

  const std::size_t outputs = total_width(integrands);
  std::vector<std::vector<CompensatedSum>> acc(outputs,
                                               std::vector<CompensatedSum>(xs.size()));

  if (family.has_kernel()) {
    std::vector<std::unique_ptr<KernelCursor>> cursors;
    cursors.reserve(xs.size());
    for (double x : xs) cursors.push_back(family.cursor(x));
    std::vector<KernelView> views(xs.size());
    std::vector<double> nodes;
    std::vector<std::vector<double>> node_values(outputs);
    std::vector<double> scratch(outputs);

    for (std::uint64_t n = 1; n <= terms; ++n) {
      std::size_t lo = SIZE_MAX, hi = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        views[i] = cursors[i]->next();
        lo = std::min(lo, views[i].first);
        hi = std::max(hi, views[i].first + views[i].weights.size());
      }
      if (coef[n] == 0.0) continue;

      const std::size_t span_len = hi - lo;
      nodes.resize(span_len);
      for (std::size_t j = 0; j < span_len; ++j) nodes[j] = family.node(n, lo + j);
      for (auto& v : node_values) v.resize(span_len);
      std::size_t o = 0;
      for (const auto& in : integrands) {
        if (in.kind == Integrand::Kind::kFixed) {
          std::span<double> out(scratch.data(), in.width);
          for (std::size_t j = 0; j < span_len; ++j) {
            in.eval(nodes[j], out);
            for (std::size_t q = 0; q < in.width; ++q) node_values[o + q][j] = out[q];
          }
        }
        o += in.width;
      }

      for (std::size_t i = 0; i < xs.size(); ++i) {
        const KernelView& v = views[i];
        const std::size_t off = v.first - lo;
        const double* w = v.weights.data();
        const std::size_t len = v.weights.size();
        const double scale = coef[n] * v.factor;
        const double norm = v.normalizer;
        o = 0;
        for (const auto& in : integrands) {
          if (in.kind == Integrand::Kind::kSquaredDistance) {
            const double sq =
                detail::lane_squared_distance(w, nodes.data() + off, xs[i], len);
            acc[o][i] += scale * (sq / norm);
          } else {
            for (std::size_t q = 0; q < in.width; ++q) {
              acc[o + q][i] +=
                  scale * (detail::lane_dot(w, node_values[o + q].data() + off, len) / norm);
            }
          }
          o += in.width;
        }
      }
    }
  } else {
    for (std::uint64_t n = 1; n <= terms; ++n) {
      if (coef[n] == 0.0) continue;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        std::size_t o = 0;
        for (const auto& in : integrands) {
          if (in.kind == Integrand::Kind::kSquaredDistance) {
            const ScalarFunction g = [x](double y) { return (y - x) * (y - x); };
            acc[o][i] += coef[n] * family.apply(n, g, x);
          } else {
            for (std::size_t q = 0; q < in.width; ++q) {
              const ScalarFunction g = [&in, q](double y) {
                std::vector<double> out(in.width);
                in.eval(y, out);
                return out[q];
              };
              acc[o + q][i] += coef[n] * family.apply(n, g, x);
            }
          }
          o += in.width;
        }
      }
    }
  }

  table.values.assign(outputs, std::vector<double>(xs.size()));
  for (std::size_t o = 0; o < outputs; ++o) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      table.values[o][i] = acc[o][i].value() / den;
    }
  }
  return table;
}

FunctionTable transform_function(const OperatorFamily& base, const ScalarFunction& g,
                                 double t, const PowerSeriesMethod& method,
                                 const TruncationPolicy& policy,
                                 const DomainGrid& grid) {
  const Integrand in[] = {Integrand::scalar(g, sup_norm(g, grid))};
  MeanTable m = summed_means(base, in, grid.points(), t, method, policy);
  return {std::move(m.values.front()), m.terms, m.tail_bound};
}

std::vector<FuzzyNumber> transform_fuzzy_all(const FuzzyOperatorFamily& family,
                                             const FuzzyFunction& f, double t,
                                             const PowerSeriesMethod& method,
                                             const TruncationPolicy& policy,
                                             std::span<const double> xs,
                                             FuzzyRoute route, std::uint64_t* terms) {
  const bool boundary = route == FuzzyRoute::kAuto && f.is_level_affine();
  const double bound = function_bound(f);
  const Integrand in[] = {boundary ? Integrand::fuzzy_boundary(f, bound)
                                   : Integrand::fuzzy_levels(f, bound)};
  const MeanTable m = summed_means(family.base(), in, xs, t, method, policy);
  if (terms) *terms = m.terms;

  const AlphaGrid& grid = f.grid();
  std::vector<FuzzyNumber> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Interval> cuts(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (boundary) {
        const double alpha = grid[k];
        cuts[k] = {std::lerp(m.values[0][i], m.values[2][i], alpha),
                   std::lerp(m.values[1][i], m.values[3][i], alpha)};
      } else {
        cuts[k] = {m.values[2 * k][i], m.values[2 * k + 1][i]};
      }
    }
    repair_nesting(cuts);
    out.emplace_back(grid, std::move(cuts));
  }
  return out;
}

FuzzyMean transform_fuzzy(const FuzzyOperatorFamily& family, const FuzzyFunction& f,
                          double t, const PowerSeriesMethod& method,
                          const TruncationPolicy& policy, double x, FuzzyRoute route) {
  const double xs[] = {x};
  std::uint64_t terms = 0;
  auto values = transform_fuzzy_all(family, f, t, method, policy, xs, route, &terms);
  double tail = 0.0;
  const double bound = policy.bound_hint
                           ? *policy.bound_hint
                           : family.base().unit_norm_bound() * function_bound(f);
  terms_needed(t, method, policy, bound, &tail);
  return {std::move(values.front()), terms, tail};
}

}  // namespace fuzzykor
