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

#include "fuzzykor/operators.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzykor/compensated.hpp"
#include "fuzzykor/error.hpp"
#include "lanes.hpp"
#include "numfmt.hpp"

namespace fuzzykor {

namespace {

constexpr double kRelativeCutoff = 1e-24;

void require_bernstein_args(std::size_t n, double x) {
  if (n == 0) throw_invalid("operator index n must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) {
    throw_invalid("Bernstein operators need x in [0, 1], got " +
                  detail::format_double(x));
  }
}

double kernel_dot(const Kernel& k, std::size_t n, const ScalarFunction& g) {
  CompensatedSum s;
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j < k.weights.size(); ++j) {
    s += k.weights[j] * g(static_cast<double>(k.first + j) / dn);
  }
  return k.factor * (s.value() / k.normalizer);
}

// Bernstein kernels for n = 1, 2, ... at a fixed x via the Pascal recurrence
// b_{n+1,j} = x b_{n,j-1} + (1-x) b_{n,j}, a convex combination, so rounding
// does not amplify. Entries below kRelativeCutoff are trimmed from both ends.
class BernsteinCursor final : public KernelCursor {
 public:
  BernsteinCursor(double x, bool perturbed)
      : x_(x), omx_(1.0 - x), perturbed_(perturbed) {}

  KernelView next() override {
    if (n_ == 0) {
      cur_ = {omx_, x_};
      off_ = 0;
      len_ = 2;
      first_ = 0;
    } else {
      next_.resize(len_ + 1);
      const double* src = cur_.data() + off_;
      next_[0] = omx_ * src[0];
      for (std::size_t k = 1; k < len_; ++k) {
        next_[k] = x_ * src[k - 1] + omx_ * src[k];
      }
      next_[len_] = x_ * src[len_ - 1];
      cur_.swap(next_);
      off_ = 0;
      len_ += 1;
    }
    ++n_;
    while (len_ > 1 && cur_[off_] < kRelativeCutoff) {
      ++off_;
      ++first_;
      --len_;
    }
    while (len_ > 1 && cur_[off_ + len_ - 1] < kRelativeCutoff) --len_;

    // lane_sum matches lane_dot against ones, so constants come out exact
    const double total = detail::lane_sum(cur_.data() + off_, len_);
    const double factor = perturbed_ ? 1.0 + cube_indicator(n_) : 1.0;
    return {first_, std::span<const double>(cur_.data() + off_, len_), factor, total};
  }

 private:
  double x_;
  double omx_;
  bool perturbed_;
  std::size_t n_ = 0;
  std::size_t first_ = 0;
  std::size_t off_ = 0;
  std::size_t len_ = 0;
  std::vector<double> cur_;
  std::vector<double> next_;
};

}  // namespace

Kernel OperatorFamily::kernel(std::size_t, double) const {
  throw Error(ErrorCode::kInternalConsistency,
              std::string(name()) + " has no kernel representation");
}

std::unique_ptr<KernelCursor> OperatorFamily::cursor(double) const {
  return nullptr;
}

double OperatorFamily::node(std::size_t, std::size_t) const {
  throw Error(ErrorCode::kInternalConsistency,
              std::string(name()) + " has no kernel representation");
}

Kernel bernstein_weights(std::size_t n, double x) {
  require_bernstein_args(n, x);
  if (x == 0.0) return {0, {1.0}, 1.0};
  if (x == 1.0) return {n, {1.0}, 1.0};

  const double dn = static_cast<double>(n);
  const auto mode = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::floor((dn + 1.0) * x)));
  const double ratio = x / (1.0 - x);

  std::vector<double> down;  // weights at mode-1, mode-2, ...
  double w = 1.0;
  for (std::size_t j = mode; j > 0; --j) {
    w *= static_cast<double>(j) / (static_cast<double>(n - j + 1) * ratio);
    if (w < kRelativeCutoff) break;
    down.push_back(w);
  }
  std::vector<double> up;  // weights at mode+1, mode+2, ...
  w = 1.0;
  for (std::size_t j = mode; j < n; ++j) {
    w *= static_cast<double>(n - j) / static_cast<double>(j + 1) * ratio;
    if (w < kRelativeCutoff) break;
    up.push_back(w);
  }

  Kernel k;
  k.first = mode - down.size();
  k.weights.reserve(down.size() + 1 + up.size());
  k.weights.assign(down.rbegin(), down.rend());
  k.weights.push_back(1.0);
  k.weights.insert(k.weights.end(), up.begin(), up.end());

  CompensatedSum total;
  for (double v : k.weights) total += v;
  k.normalizer = total.value();
  return k;
}

double bernstein_apply(std::size_t n, const ScalarFunction& g, double x) {
  return kernel_dot(bernstein_weights(n, x), n, g);
}

bool is_perfect_cube(std::uint64_t n) noexcept {
  if (n == 0) return false;
  auto m = static_cast<std::uint64_t>(std::llround(std::cbrt(static_cast<double>(n))));
  for (std::uint64_t c = (m > 0 ? m - 1 : 0); c <= m + 1; ++c) {
    if (c * c * c == n) return true;
  }
  return false;
}

double cube_indicator(std::uint64_t n) noexcept {
  return is_perfect_cube(n) ? 1.0 : 0.0;
}

double perturbed_bernstein(std::size_t n, const ScalarFunction& g, double x) {
  return (1.0 + cube_indicator(n)) * bernstein_apply(n, g, x);
}

double BernsteinFamily::apply(std::size_t n, const ScalarFunction& g, double x) const {
  return bernstein_apply(n, g, x);
}

Kernel BernsteinFamily::kernel(std::size_t n, double x) const {
  return bernstein_weights(n, x);
}

std::unique_ptr<KernelCursor> BernsteinFamily::cursor(double x) const {
  require_bernstein_args(1, x);
  return std::make_unique<BernsteinCursor>(x, false);
}

double BernsteinFamily::node(std::size_t n, std::size_t j) const {
  return static_cast<double>(j) / static_cast<double>(n);
}

double PerturbedBernsteinFamily::apply(std::size_t n, const ScalarFunction& g,
                                       double x) const {
  return kernel_dot(kernel(n, x), n, g);
}

Kernel PerturbedBernsteinFamily::kernel(std::size_t n, double x) const {
  Kernel k = bernstein_weights(n, x);
  k.factor = 1.0 + cube_indicator(n);
  return k;
}

std::unique_ptr<KernelCursor> PerturbedBernsteinFamily::cursor(double x) const {
  require_bernstein_args(1, x);
  return std::make_unique<BernsteinCursor>(x, true);
}

FamilyRegistry FamilyRegistry::with_builtins() {
  FamilyRegistry r;
  r.add(std::make_shared<BernsteinFamily>());
  r.add(std::make_shared<PerturbedBernsteinFamily>());
  return r;
}

void FamilyRegistry::add(std::shared_ptr<const OperatorFamily> family) {
  if (!family) throw_invalid("operator family is null");
  std::string name(family->name());
  if (name.empty()) throw_invalid("operator family needs a name");
  if (!(family->unit_norm_bound() > 0.0)) {
    throw_invalid("operator '" + name + "' needs a positive unit-norm bound");
  }
  if (families_.count(name)) throw_invalid("operator '" + name + "' is already registered");
  families_.emplace(std::move(name), std::move(family));
}

void FamilyRegistry::add(std::string name, FunctionalFamily::ApplyFn apply,
                         double unit_norm_bound) {
  add(std::make_shared<FunctionalFamily>(std::move(name), std::move(apply),
                                         unit_norm_bound));
}

std::shared_ptr<const OperatorFamily> FamilyRegistry::get(const std::string& name) const {
  if (auto it = families_.find(name); it != families_.end()) return it->second;
  std::string valid;
  for (const auto& n : names()) valid += (valid.empty() ? "" : ", ") + n;
  throw_invalid("unknown operator '" + name + "' (valid: " + valid + ")");
}

std::vector<std::string> FamilyRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : families_) out.push_back(name);
  return out;
}

void repair_nesting(std::vector<Interval>& cuts, double tolerance) {
  auto fail = [](std::size_t k, const char* what, double by) {
    throw Error(ErrorCode::kInternalConsistency,
                "lifted cut at level " + std::to_string(k) + " " + what + " by " +
                    detail::format_double(by) + " (non-positive base operator?)");
  };
  for (std::size_t k = 1; k < cuts.size(); ++k) {
    if (cuts[k].lo < cuts[k - 1].lo) {
      const double by = cuts[k - 1].lo - cuts[k].lo;
      if (by > tolerance) fail(k, "breaks lower nesting", by);
      cuts[k].lo = cuts[k - 1].lo;
    }
    if (cuts[k].hi > cuts[k - 1].hi) {
      const double by = cuts[k].hi - cuts[k - 1].hi;
      if (by > tolerance) fail(k, "breaks upper nesting", by);
      cuts[k].hi = cuts[k - 1].hi;
    }
  }
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    if (cuts[k].lo > cuts[k].hi) {
      const double by = cuts[k].lo - cuts[k].hi;
      if (by > tolerance) fail(k, "has lo > hi", by);
      const double mid = 0.5 * (cuts[k].lo + cuts[k].hi);
      cuts[k] = {mid, mid};
    }
  }
}

FuzzyOperatorFamily::FuzzyOperatorFamily(std::shared_ptr<const OperatorFamily> base)
    : base_(std::move(base)) {
  if (!base_) throw_invalid("fuzzy operator family needs a base family");
}

FuzzyNumber FuzzyOperatorFamily::apply(std::size_t n, const FuzzyFunction& f,
                                       double x) const {
  const double xs[] = {x};
  return std::move(apply_all(n, f, xs).front());
}

std::vector<FuzzyNumber> FuzzyOperatorFamily::apply_all(
    std::size_t n, const FuzzyFunction& f, std::span<const double> xs) const {
  const std::size_t levels = f.grid().size();
  std::vector<FuzzyNumber> out;
  out.reserve(xs.size());

  if (!base_->has_kernel()) {
    for (double x : xs) {
      std::vector<Interval> cuts(levels);
      for (std::size_t k = 0; k < levels; ++k) {
        cuts[k] = {base_->apply(n, f.slice(k, Side::kLower), x),
                   base_->apply(n, f.slice(k, Side::kUpper), x)};
      }
      repair_nesting(cuts);
      out.emplace_back(f.grid(), std::move(cuts));
    }
    return out;
  }

  std::vector<Kernel> kernels;
  kernels.reserve(xs.size());
  std::size_t lo = SIZE_MAX, hi = 0;
  for (double x : xs) {
    kernels.push_back(base_->kernel(n, x));
    lo = std::min(lo, kernels.back().first);
    hi = std::max(hi, kernels.back().first + kernels.back().weights.size());
  }
  std::vector<FuzzyNumber> nodes;
  nodes.reserve(hi - lo);
  for (std::size_t j = lo; j < hi; ++j) nodes.push_back(f(base_->node(n, j)));

  std::vector<CompensatedSum> lower(levels), upper(levels);
  for (const Kernel& k : kernels) {
    std::fill(lower.begin(), lower.end(), CompensatedSum{});
    std::fill(upper.begin(), upper.end(), CompensatedSum{});
    for (std::size_t j = 0; j < k.weights.size(); ++j) {
      const FuzzyNumber& v = nodes[k.first + j - lo];
      const double w = k.weights[j];
      for (std::size_t l = 0; l < levels; ++l) {
        lower[l] += w * v.cut(l).lo;
        upper[l] += w * v.cut(l).hi;
      }
    }
    std::vector<Interval> cuts(levels);
    for (std::size_t l = 0; l < levels; ++l) {
      cuts[l] = {k.factor * (lower[l].value() / k.normalizer),
                 k.factor * (upper[l].value() / k.normalizer)};
    }
    repair_nesting(cuts);
    out.emplace_back(f.grid(), std::move(cuts));
  }
  return out;
}

FuzzyOperatorFamily lift_fuzzy(std::shared_ptr<const OperatorFamily> base) {
  return FuzzyOperatorFamily(std::move(base));
}

ScalarFunction test_function(int i) {
  switch (i) {
    case 0: return [](double) { return 1.0; };
    case 1: return [](double x) { return x; };
    case 2: return [](double x) { return x * x; };
    default: throw_invalid("Korovkin test function index must be 0, 1 or 2");
  }
}

double korovkin_norm(const OperatorFamily& base, std::size_t n, int i,
                     const DomainGrid& grid) {
  const ScalarFunction e = test_function(i);
  double m = 0.0;
  for (double x : grid.points()) {
    m = std::max(m, std::fabs(base.apply(n, e, x) - e(x)));
  }
  return m;
}

}  // namespace fuzzykor
