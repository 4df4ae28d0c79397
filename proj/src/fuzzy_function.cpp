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

#include "fuzzykor/fuzzy_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "fuzzykor/error.hpp"
#include "numfmt.hpp"

namespace fuzzykor {

namespace {

void require_positive_delta(double delta) {
  if (!(delta > 0.0)) throw_invalid("modulus of continuity needs delta > 0");
}

double pair_limit(double delta) { return delta * (1.0 + 1e-12); }

// Visits every grid pair i < j with points[j] - points[i] <= delta.
template <typename Visit>
void for_each_admissible_pair(const DomainGrid& grid, double delta, Visit&& visit) {
  const auto pts = grid.points();
  const double limit = pair_limit(delta);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size() && pts[j] - pts[i] <= limit; ++j) {
      visit(i, j);
    }
  }
}

void require_table(std::size_t n, const DomainGrid& grid) {
  if (n != grid.size()) throw_invalid("tabulation does not match the domain grid");
}

}  // namespace

DomainGrid DomainGrid::uniform(double a, double b, std::size_t points) {
  if (points < 2) throw_invalid("domain grid needs at least two points");
  if (!(a < b)) throw_invalid("domain grid needs a < b");
  std::vector<double> p(points);
  const double n = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    p[i] = a + (b - a) * (static_cast<double>(i) / n);
  }
  p.back() = b;
  return DomainGrid(std::make_shared<const std::vector<double>>(std::move(p)));
}

DomainGrid DomainGrid::from_points(std::vector<double> points) {
  if (points.size() < 2) throw_invalid("domain grid needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) {
      throw_invalid("domain grid points must be strictly increasing");
    }
  }
  return DomainGrid(std::make_shared<const std::vector<double>>(std::move(points)));
}

double DomainGrid::d() const noexcept {
  return std::max(std::fabs(a()), std::fabs(b()));
}

FuzzyFunction FuzzyFunction::general(std::string name, double a, double b,
                                     AlphaGrid grid, CutFn cut) {
  FuzzyFunction f(std::move(name), a, b, std::move(grid));
  f.cut_ = std::move(cut);
  return f;
}

FuzzyFunction FuzzyFunction::level_affine(std::string name, double a, double b,
                                          AlphaGrid grid, BoundaryFn boundary) {
  FuzzyFunction f(std::move(name), a, b, std::move(grid));
  f.boundary_ = std::move(boundary);
  f.cut_ = [bd = f.boundary_](double alpha, double x) {
    const auto [support, core] = bd(x);
    return Interval{std::lerp(support.lo, core.lo, alpha),
                    std::lerp(support.hi, core.hi, alpha)};
  };
  return f;
}

FuzzyNumber FuzzyFunction::operator()(double x) const {
  std::vector<Interval> cuts(grid_.size());
  if (boundary_) {
    const auto [support, core] = boundary_(x);
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double alpha = grid_[k];
      cuts[k] = {std::lerp(support.lo, core.lo, alpha),
                 std::lerp(support.hi, core.hi, alpha)};
    }
  } else {
    for (std::size_t k = 0; k < cuts.size(); ++k) cuts[k] = cut_(grid_[k], x);
  }
  return FuzzyNumber(grid_, std::move(cuts));
}

Interval FuzzyFunction::cut(std::size_t level, double x) const {
  return cut_(grid_[level], x);
}

ScalarFunction FuzzyFunction::slice(std::size_t level, Side side) const {
  return [cut = cut_, alpha = grid_[level], side](double x) {
    return endpoint_of(cut(alpha, x), side);
  };
}

FuzzyFunction crisp_function(std::string name, ScalarFunction g, double a,
                             double b, const AlphaGrid& grid) {
  return FuzzyFunction::level_affine(
      std::move(name), a, b, grid, [g = std::move(g)](double x) {
        const double v = g(x);
        return std::pair{Interval{v, v}, Interval{v, v}};
      });
}

std::vector<std::string> catalog_names() {
  return {"e0", "e1", "e2", "f1", "f2"};
}

FuzzyFunction catalog_function(const std::string& name, const AlphaGrid& grid) {
  if (name == "e0") return crisp_function(name, [](double) { return 1.0; }, 0, 1, grid);
  if (name == "e1") return crisp_function(name, [](double x) { return x; }, 0, 1, grid);
  if (name == "e2") return crisp_function(name, [](double x) { return x * x; }, 0, 1, grid);
  if (name == "f1") {
    constexpr double kWidth = 0.25;
    return FuzzyFunction::level_affine(name, 0, 1, grid, [](double x) {
      const double s = std::sin(std::numbers::pi * x);
      return std::pair{Interval{s - kWidth, s + kWidth}, Interval{s, s}};
    });
  }
  if (name == "f2") {
    return FuzzyFunction::level_affine(name, 0, 1, grid, [](double x) {
      const double sq = x * x;
      const double peak = sq + x * (1.0 - x);
      return std::pair{Interval{sq, sq + 1.0}, Interval{peak, peak}};
    });
  }
  std::string valid;
  for (const auto& n : catalog_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw_invalid("unknown function '" + name + "' (valid: " + valid + ")");
}

std::vector<FuzzyNumber> tabulate(const FuzzyFunction& f, const DomainGrid& grid) {
  std::vector<FuzzyNumber> table;
  table.reserve(grid.size());
  for (double x : grid.points()) table.push_back(f(x));
  return table;
}

double metric_Dstar(const FuzzyFunction& g, const FuzzyFunction& h,
                    const DomainGrid& grid) {
  if (!(g.grid() == h.grid())) throw_invalid("metric_Dstar: different alpha grids");
  double d = 0.0;
  for (double x : grid.points()) d = std::max(d, metric_D(g(x), h(x)));
  return d;
}

double metric_Dstar(std::span<const FuzzyNumber> g, std::span<const FuzzyNumber> h) {
  if (g.size() != h.size()) throw_invalid("metric_Dstar: tabulations differ in length");
  double d = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) d = std::max(d, metric_D(g[i], h[i]));
  return d;
}

double sup_norm(const ScalarFunction& g, const DomainGrid& grid) {
  double m = 0.0;
  for (double x : grid.points()) m = std::max(m, std::fabs(g(x)));
  return m;
}

double sup_norm(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

double modulus_classical(const ScalarFunction& g, double delta,
                         const DomainGrid& grid) {
  require_positive_delta(delta);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = g(grid[i]);
  return modulus_classical(values, delta, grid);
}

double modulus_classical(std::span<const double> values, double delta,
                         const DomainGrid& grid) {
  require_positive_delta(delta);
  require_table(values.size(), grid);
  double w = 0.0;
  for_each_admissible_pair(grid, delta, [&](std::size_t i, std::size_t j) {
    w = std::max(w, std::fabs(values[j] - values[i]));
  });
  return w;
}

double modulus_fuzzy(const FuzzyFunction& f, double delta, const DomainGrid& grid) {
  require_positive_delta(delta);
  return modulus_fuzzy(tabulate(f, grid), delta, grid);
}

double modulus_fuzzy(std::span<const FuzzyNumber> table, double delta,
                     const DomainGrid& grid) {
  require_positive_delta(delta);
  require_table(table.size(), grid);
  double w = 0.0;
  for_each_admissible_pair(grid, delta, [&](std::size_t i, std::size_t j) {
    w = std::max(w, metric_D(table[j], table[i]));
  });
  return w;
}

double modulus_via_lemma(const FuzzyFunction& f, double delta,
                         const DomainGrid& grid) {
  require_positive_delta(delta);
  return modulus_via_lemma(tabulate(f, grid), delta, grid);
}

double modulus_via_lemma(std::span<const FuzzyNumber> table, double delta,
                         const DomainGrid& grid) {
  require_positive_delta(delta);
  require_table(table.size(), grid);
  if (table.empty()) return 0.0;
  const std::size_t levels = table.front().size();
  std::vector<double> slice(table.size());
  double w = 0.0;
  for (std::size_t k = 0; k < levels; ++k) {
    for (Side side : {Side::kLower, Side::kUpper}) {
      for (std::size_t i = 0; i < table.size(); ++i) {
        slice[i] = endpoint_of(table[i].cut(k), side);
      }
      w = std::max(w, modulus_classical(slice, delta, grid));
    }
  }
  return w;
}

double endpoint_sup_norm(const FuzzyFunction& f, double alpha, Side side,
                         const DomainGrid& grid) {
  const std::size_t k = f.grid().index_of(alpha);
  return sup_norm(f.slice(k, side), grid);
}

double fuzzy_sup_bound(std::span<const FuzzyNumber> table) {
  double m = 0.0;
  for (const auto& x : table) {
    for (const auto& c : x.cuts()) {
      m = std::max({m, std::fabs(c.lo), std::fabs(c.hi)});
    }
  }
  return m;
}

void write_tabulation_csv(const FuzzyFunction& f, const DomainGrid& grid,
                          std::ostream& out) {
  out << "x,alpha,lo,hi\n";
  for (double x : grid.points()) {
    const FuzzyNumber v = f(x);
    for (std::size_t k = 0; k < v.size(); ++k) {
      out << detail::format_double(x) << ',' << detail::format_double(v.grid()[k])
          << ',' << detail::format_double(v.cut(k).lo) << ','
          << detail::format_double(v.cut(k).hi) << '\n';
    }
  }
}

}  // namespace fuzzykor
