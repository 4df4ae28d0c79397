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
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzykor/fuzzy_number.hpp"

namespace fuzzykor {

using ScalarFunction = std::function<double(double)>;

// Sample points of a compact interval J = [a, b], including both ends.
class DomainGrid {
 public:
  static DomainGrid uniform(double a, double b, std::size_t points);
  static DomainGrid from_points(std::vector<double> points);

  double a() const noexcept { return points_->front(); }
  double b() const noexcept { return points_->back(); }
  // max{|a|, |b|}
  double d() const noexcept;
  std::size_t size() const noexcept { return points_->size(); }
  double operator[](std::size_t i) const noexcept { return (*points_)[i]; }
  std::span<const double> points() const noexcept { return *points_; }

  friend bool operator==(const DomainGrid& x, const DomainGrid& y) noexcept {
    return x.points_ == y.points_ || *x.points_ == *y.points_;
  }

 private:
  explicit DomainGrid(std::shared_ptr<const std::vector<double>> points)
      : points_(std::move(points)) {}

  std::shared_ptr<const std::vector<double>> points_;
};

inline constexpr std::size_t kDefaultDomainPoints = 1001;

enum class Side { kLower, kUpper };

inline double endpoint_of(const Interval& c, Side side) noexcept {
  return side == Side::kLower ? c.lo : c.hi;
}

// A fuzzy-number-valued function on [a, b], described by its alpha-level
// endpoint functions f_alpha^-(x), f_alpha^+(x).
class FuzzyFunction {
 public:
  using CutFn = std::function<Interval(double alpha, double x)>;
  // (support, core) = (0-cut, 1-cut) at x.
  using BoundaryFn = std::function<std::pair<Interval, Interval>(double x)>;

  // General function: the cut at any level is computed on demand.
  static FuzzyFunction general(std::string name, double a, double b,
                               AlphaGrid grid, CutFn cut);
  // Cuts interpolate linearly in alpha between the support and the core,
  // as for triangular and trapezoidal shapes.
  static FuzzyFunction level_affine(std::string name, double a, double b,
                                    AlphaGrid grid, BoundaryFn boundary);

  const std::string& name() const noexcept { return name_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  const AlphaGrid& grid() const noexcept { return grid_; }

  FuzzyNumber operator()(double x) const;
  Interval cut(std::size_t level, double x) const;
  double endpoint(std::size_t level, Side side, double x) const {
    return endpoint_of(cut(level, x), side);
  }
  ScalarFunction slice(std::size_t level, Side side) const;

  bool is_level_affine() const noexcept { return static_cast<bool>(boundary_); }
  // Only meaningful when is_level_affine().
  std::pair<Interval, Interval> boundary(double x) const { return boundary_(x); }

 private:
  FuzzyFunction(std::string name, double a, double b, AlphaGrid grid)
      : name_(std::move(name)), a_(a), b_(b), grid_(std::move(grid)) {}

  std::string name_;
  double a_;
  double b_;
  AlphaGrid grid_;
  CutFn cut_;
  BoundaryFn boundary_;
};

// Lifts a scalar function to the crisp fuzzy function x -> {g(x)}.
FuzzyFunction crisp_function(std::string name, ScalarFunction g, double a,
                             double b, const AlphaGrid& grid);

// Named test functions on [0, 1]: e0, e1, e2 (crisp monomials), f1 (a
// triangular band around sin(pi x)) and f2 (x-dependent width).
std::vector<std::string> catalog_names();
// Throws invalid-argument with the list of valid names.
FuzzyFunction catalog_function(const std::string& name, const AlphaGrid& grid);

// f evaluated at every grid point.
std::vector<FuzzyNumber> tabulate(const FuzzyFunction& f, const DomainGrid& grid);

double metric_Dstar(const FuzzyFunction& g, const FuzzyFunction& h,
                    const DomainGrid& grid);
double metric_Dstar(std::span<const FuzzyNumber> g,
                    std::span<const FuzzyNumber> h);

double sup_norm(const ScalarFunction& g, const DomainGrid& grid);
double sup_norm(std::span<const double> values);

// Pairs (z, x) on the grid count as admissible when |z - x| <= delta up to a
// relative slack of 1e-12, so that a grid spacing multiple equal to delta is
// not lost to rounding of the grid points.
double modulus_classical(const ScalarFunction& g, double delta,
                         const DomainGrid& grid);
double modulus_classical(std::span<const double> values, double delta,
                         const DomainGrid& grid);

// sup over admissible pairs of D(f(z), f(x)).
double modulus_fuzzy(const FuzzyFunction& f, double delta, const DomainGrid& grid);
double modulus_fuzzy(std::span<const FuzzyNumber> table, double delta,
                     const DomainGrid& grid);

// sup over alpha of max{w(f_alpha^-; delta), w(f_alpha^+; delta)}.
double modulus_via_lemma(const FuzzyFunction& f, double delta,
                         const DomainGrid& grid);
double modulus_via_lemma(std::span<const FuzzyNumber> table, double delta,
                         const DomainGrid& grid);

// ||f_alpha^{side}|| on the grid; alpha must be a level of f's grid.
double endpoint_sup_norm(const FuzzyFunction& f, double alpha, Side side,
                         const DomainGrid& grid);
// M = sup over alpha of max{||f_alpha^-||, ||f_alpha^+||}.
double fuzzy_sup_bound(std::span<const FuzzyNumber> table);

// CSV with header x,alpha,lo,hi; one row per (grid point, level).
void write_tabulation_csv(const FuzzyFunction& f, const DomainGrid& grid,
                          std::ostream& out);

}  // namespace fuzzykor
