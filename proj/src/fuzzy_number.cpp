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

#include "fuzzykor/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzykor/error.hpp"
#include "numfmt.hpp"

namespace fuzzykor {

namespace {

void require_same_grid(const FuzzyNumber& x, const FuzzyNumber& y,
                       const char* op) {
  if (!(x.grid() == y.grid())) {
    throw_invalid(std::string(op) + ": operands use different alpha grids");
  }
}

}  // namespace

double hausdorff(const Interval& a, const Interval& b) noexcept {
  return std::max(std::fabs(a.lo - b.lo), std::fabs(a.hi - b.hi));
}

AlphaGrid AlphaGrid::uniform(std::size_t intervals) {
  if (intervals < 1) throw_invalid("alpha grid needs at least one interval");
  std::vector<double> levels(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    levels[k] = static_cast<double>(k) / static_cast<double>(intervals);
  }
  return AlphaGrid(std::make_shared<const std::vector<double>>(std::move(levels)));
}

AlphaGrid AlphaGrid::from_levels(std::vector<double> levels) {
  if (levels.size() < 2 || levels.front() != 0.0 || levels.back() != 1.0) {
    throw_invalid("alpha levels must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < levels.size(); ++k) {
    if (!(levels[k] > levels[k - 1])) {
      throw_invalid("alpha levels must be strictly increasing");
    }
  }
  return AlphaGrid(std::make_shared<const std::vector<double>>(std::move(levels)));
}

std::size_t AlphaGrid::index_of(double alpha) const {
  const auto& lv = *levels_;
  auto it = std::lower_bound(lv.begin(), lv.end(), alpha - 1e-12);
  if (it == lv.end() || std::fabs(*it - alpha) > 1e-12) {
    throw_invalid("alpha " + detail::format_double(alpha) +
                  " is not a level of the grid");
  }
  return static_cast<std::size_t>(it - lv.begin());
}

FuzzyNumber::FuzzyNumber(AlphaGrid grid, std::vector<Interval> cuts)
    : grid_(std::move(grid)), cuts_(std::move(cuts)) {
  if (cuts_.size() != grid_.size()) {
    throw_invalid("fuzzy number needs exactly one cut per alpha level");
  }
}

FuzzyNumber FuzzyNumber::checked(AlphaGrid grid, std::vector<Interval> cuts) {
  FuzzyNumber x(std::move(grid), std::move(cuts));
  auto violations = validate(x);
  if (!violations.empty()) {
    throw_invalid("invalid fuzzy number: " + violations.front().describe());
  }
  return x;
}

std::string Violation::describe() const {
  const char* what = "";
  switch (kind) {
    case Kind::kNonFinite: what = "non-finite endpoint"; break;
    case Kind::kIntervalOrder: what = "lower endpoint exceeds upper endpoint"; break;
    case Kind::kLowerNesting: what = "lower endpoint decreases with alpha"; break;
    case Kind::kUpperNesting: what = "upper endpoint increases with alpha"; break;
  }
  return "level " + std::to_string(level) + ": " + what;
}

FuzzyNumber crisp(double value, const AlphaGrid& grid) {
  return FuzzyNumber(grid, std::vector<Interval>(grid.size(), {value, value}));
}

FuzzyNumber make_triangular(double a, double b, double c, const AlphaGrid& grid) {
  if (!(a <= b && b <= c)) {
    throw_invalid("triangular number requires a <= b <= c");
  }
  std::vector<Interval> cuts(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double alpha = grid[k];
    cuts[k] = {a + alpha * (b - a), c - alpha * (c - b)};
  }
  return FuzzyNumber(grid, std::move(cuts));
}

FuzzyNumber add(const FuzzyNumber& x, const FuzzyNumber& y) {
  require_same_grid(x, y, "add");
  std::vector<Interval> cuts(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    cuts[k] = {x.cut(k).lo + y.cut(k).lo, x.cut(k).hi + y.cut(k).hi};
  }
  return FuzzyNumber(x.grid(), std::move(cuts));
}

FuzzyNumber scale(double lambda, const FuzzyNumber& x) {
  std::vector<Interval> cuts(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double a = lambda * x.cut(k).lo;
    const double b = lambda * x.cut(k).hi;
    cuts[k] = lambda >= 0.0 ? Interval{a, b} : Interval{b, a};
  }
  return FuzzyNumber(x.grid(), std::move(cuts));
}

double metric_D(const FuzzyNumber& x, const FuzzyNumber& y) {
  require_same_grid(x, y, "metric_D");
  double d = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    d = std::max(d, hausdorff(x.cut(k), y.cut(k)));
  }
  return d;
}

bool partial_leq(const FuzzyNumber& x, const FuzzyNumber& y) {
  require_same_grid(x, y, "partial_leq");
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x.cut(k).lo <= y.cut(k).lo && x.cut(k).hi <= y.cut(k).hi)) {
      return false;
    }
  }
  return true;
}

std::vector<Violation> validate(const FuzzyNumber& x) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const Interval& c = x.cut(k);
    if (!std::isfinite(c.lo) || !std::isfinite(c.hi)) {
      out.push_back({k, Kind::kNonFinite});
      continue;
    }
    if (!c.valid()) out.push_back({k, Kind::kIntervalOrder});
    if (k > 0) {
      const Interval& prev = x.cut(k - 1);
      if (c.lo < prev.lo) out.push_back({k, Kind::kLowerNesting});
      if (c.hi > prev.hi) out.push_back({k, Kind::kUpperNesting});
    }
  }
  return out;
}

FuzzyNumber resample(const FuzzyNumber& x, const AlphaGrid& grid) {
  const auto src = x.grid().levels();
  std::vector<Interval> cuts(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double alpha = grid[k];
    auto it = std::upper_bound(src.begin(), src.end(), alpha);
    std::size_t hi = std::min<std::size_t>(it - src.begin(), src.size() - 1);
    std::size_t lo = hi == 0 ? 0 : hi - 1;
    if (alpha >= src.back()) lo = hi = src.size() - 1;
    if (lo == hi) {
      cuts[k] = x.cut(lo);
      continue;
    }
    const double w = (alpha - src[lo]) / (src[hi] - src[lo]);
    cuts[k] = {(1.0 - w) * x.cut(lo).lo + w * x.cut(hi).lo,
               (1.0 - w) * x.cut(lo).hi + w * x.cut(hi).hi};
  }
  return FuzzyNumber(grid, std::move(cuts));
}

std::string to_text(const FuzzyNumber& x) {
  std::string out = std::to_string(x.size() - 1) + "\n";
  for (std::size_t k = 0; k < x.size(); ++k) {
    out += detail::format_double(x.grid()[k]) + " " +
           detail::format_double(x.cut(k).lo) + " " +
           detail::format_double(x.cut(k).hi) + "\n";
  }
  return out;
}

FuzzyNumber from_text(const std::string& text) {
  std::istringstream in(text);
  long long intervals = -1;
  if (!(in >> intervals) || intervals < 1) {
    throw_invalid("fuzzy number text: expected a positive level count");
  }
  std::vector<double> levels;
  std::vector<Interval> cuts;
  for (long long k = 0; k <= intervals; ++k) {
    double alpha = 0, lo = 0, hi = 0;
    if (!(in >> alpha >> lo >> hi)) {
      throw_invalid("fuzzy number text: truncated at level " + std::to_string(k));
    }
    levels.push_back(alpha);
    cuts.push_back({lo, hi});
  }
  return FuzzyNumber(AlphaGrid::from_levels(std::move(levels)), std::move(cuts));
}

}  // namespace fuzzykor
