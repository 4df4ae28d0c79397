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
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace fuzzykor {

// Closed interval [lo, hi]. Constructed unchecked so that invalid cuts can be
// represented and reported by validate().
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool valid() const noexcept { return lo <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Hausdorff distance between two compact intervals.
double hausdorff(const Interval& a, const Interval& b) noexcept;

// Increasing list of membership levels 0 = a_0 < ... < a_K = 1 shared between
// fuzzy numbers. Copies share storage.
class AlphaGrid {
 public:
  // K + 1 equally spaced levels.
  static AlphaGrid uniform(std::size_t intervals);
  // Throws invalid-argument unless levels start at 0, end at 1 and increase.
  static AlphaGrid from_levels(std::vector<double> levels);

  std::size_t size() const noexcept { return levels_->size(); }
  double operator[](std::size_t k) const noexcept { return (*levels_)[k]; }
  std::span<const double> levels() const noexcept { return *levels_; }

  // Index of a level that lies on the grid (exact match within 1e-12).
  std::size_t index_of(double alpha) const;

  friend bool operator==(const AlphaGrid& a, const AlphaGrid& b) noexcept {
    return a.levels_ == b.levels_ || *a.levels_ == *b.levels_;
  }

 private:
  explicit AlphaGrid(std::shared_ptr<const std::vector<double>> levels)
      : levels_(std::move(levels)) {}

  std::shared_ptr<const std::vector<double>> levels_;
};

inline constexpr std::size_t kDefaultAlphaIntervals = 100;

// A fuzzy real number represented by its alpha-cuts on an AlphaGrid.
// Values are immutable.
class FuzzyNumber {
 public:
  FuzzyNumber(AlphaGrid grid, std::vector<Interval> cuts);

  // As above, but throws invalid-argument if validate() reports anything.
  static FuzzyNumber checked(AlphaGrid grid, std::vector<Interval> cuts);

  const AlphaGrid& grid() const noexcept { return grid_; }
  std::span<const Interval> cuts() const noexcept { return cuts_; }
  const Interval& cut(std::size_t k) const noexcept { return cuts_[k]; }
  std::size_t size() const noexcept { return cuts_.size(); }

  // Level-wise equality on the shared grid.
  friend bool operator==(const FuzzyNumber& a, const FuzzyNumber& b) {
    return a.grid_ == b.grid_ && a.cuts_ == b.cuts_;
  }

 private:
  AlphaGrid grid_;
  std::vector<Interval> cuts_;
};

struct Violation {
  enum class Kind {
    kNonFinite,      // an endpoint is NaN or infinite
    kIntervalOrder,  // lo > hi
    kLowerNesting,   // lo decreases as alpha increases
    kUpperNesting,   // hi increases as alpha increases
  };
  std::size_t level = 0;
  Kind kind = Kind::kIntervalOrder;

  std::string describe() const;
};

FuzzyNumber crisp(double value, const AlphaGrid& grid);
// Triangular number with support [a, c] and peak b. Requires a <= b <= c.
FuzzyNumber make_triangular(double a, double b, double c, const AlphaGrid& grid);

FuzzyNumber add(const FuzzyNumber& x, const FuzzyNumber& y);
// lambda * x; a negative factor swaps the endpoints of each cut.
FuzzyNumber scale(double lambda, const FuzzyNumber& x);

// sup over levels of the Hausdorff distance between cuts.
double metric_D(const FuzzyNumber& x, const FuzzyNumber& y);
// x <= y iff both endpoints are ordered at every level.
bool partial_leq(const FuzzyNumber& x, const FuzzyNumber& y);

// Empty iff every cut is a finite interval and the cuts are nested.
std::vector<Violation> validate(const FuzzyNumber& x);

// Linear interpolation of the endpoints in alpha onto another grid.
FuzzyNumber resample(const FuzzyNumber& x, const AlphaGrid& grid);

// Line-oriented text form: first line K, then K + 1 lines "alpha lo hi".
std::string to_text(const FuzzyNumber& x);
FuzzyNumber from_text(const std::string& text);

}  // namespace fuzzykor
