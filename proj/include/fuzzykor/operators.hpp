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
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzykor/fuzzy_function.hpp"
#include "fuzzykor/fuzzy_number.hpp"

namespace fuzzykor {

// T_n(g; x) = factor * (sum_j weights[j] * g(node(n, first + j))) / normalizer.
// Weights are kept unnormalised so that constants are reproduced exactly.
struct Kernel {
  std::size_t first = 0;
  std::vector<double> weights;
  double factor = 1.0;
  double normalizer = 1.0;
};

// Borrowed view of a kernel; valid until the producing cursor advances.
struct KernelView {
  std::size_t first = 0;
  std::span<const double> weights;
  double factor = 1.0;
  double normalizer = 1.0;
};

// Produces the kernels of T_1, T_2, ... at one fixed point, in order.
class KernelCursor {
 public:
  virtual ~KernelCursor() = default;
  virtual KernelView next() = 0;
};

// A sequence {T_n}, n >= 1, of positive linear operators on C[a, b].
class OperatorFamily {
 public:
  virtual ~OperatorFamily() = default;

  virtual std::string_view name() const = 0;
  virtual double a() const { return 0.0; }
  virtual double b() const { return 1.0; }

  virtual double apply(std::size_t n, const ScalarFunction& g, double x) const = 0;

  // Upper bound on sup_n ||T_n(e0)||. Positivity gives |T_n(g)| <= this * ||g||.
  virtual double unit_norm_bound() const = 0;

  // Families that sample their argument at fixed nodes expose the kernel;
  // the default is an opaque family.
  virtual bool has_kernel() const { return false; }
  virtual Kernel kernel(std::size_t n, double x) const;
  virtual std::unique_ptr<KernelCursor> cursor(double x) const;
  virtual double node(std::size_t n, std::size_t j) const;
};

// Bernstein weights C(n,j) x^j (1-x)^(n-j), restricted to the indices that
// carry weight above 1e-24 relative to the mode; the dropped mass is below
// 1e-20. Built outward from the mode with the ratio recurrence, with the
// compensated weight total as normalizer, so no power of x or (1-x) is ever formed and large n does not
// underflow. At x in {0, 1} the kernel is a point mass.
Kernel bernstein_weights(std::size_t n, double x);

// sum_j C(n,j) x^j (1-x)^(n-j) g(j/n). Throws invalid-argument for n == 0 or
// x outside [0, 1].
double bernstein_apply(std::size_t n, const ScalarFunction& g, double x);

bool is_perfect_cube(std::uint64_t n) noexcept;
// 1 when n is a perfect cube, else 0.
double cube_indicator(std::uint64_t n) noexcept;

// (1 + cube_indicator(n)) * bernstein_apply(n, g, x).
double perturbed_bernstein(std::size_t n, const ScalarFunction& g, double x);

class BernsteinFamily : public OperatorFamily {
 public:
  std::string_view name() const override { return "bernstein"; }
  double apply(std::size_t n, const ScalarFunction& g, double x) const override;
  double unit_norm_bound() const override { return 1.0; }
  bool has_kernel() const override { return true; }
  Kernel kernel(std::size_t n, double x) const override;
  std::unique_ptr<KernelCursor> cursor(double x) const override;
  double node(std::size_t n, std::size_t j) const override;
};

// Bernstein operators scaled by (1 + x_n), x_n the cube indicator.
class PerturbedBernsteinFamily : public BernsteinFamily {
 public:
  std::string_view name() const override { return "perturbed-bernstein"; }
  double apply(std::size_t n, const ScalarFunction& g, double x) const override;
  double unit_norm_bound() const override { return 2.0; }
  Kernel kernel(std::size_t n, double x) const override;
  std::unique_ptr<KernelCursor> cursor(double x) const override;
};

// A family known only through its apply function.
class FunctionalFamily : public OperatorFamily {
 public:
  using ApplyFn = std::function<double(std::size_t, const ScalarFunction&, double)>;

  FunctionalFamily(std::string name, ApplyFn apply, double unit_norm_bound,
                   double a = 0.0, double b = 1.0)
      : name_(std::move(name)), apply_(std::move(apply)),
        unit_norm_bound_(unit_norm_bound), a_(a), b_(b) {}

  std::string_view name() const override { return name_; }
  double a() const override { return a_; }
  double b() const override { return b_; }
  double apply(std::size_t n, const ScalarFunction& g, double x) const override {
    return apply_(n, g, x);
  }
  double unit_norm_bound() const override { return unit_norm_bound_; }

 private:
  std::string name_;
  ApplyFn apply_;
  double unit_norm_bound_;
  double a_;
  double b_;
};

// Name -> family lookup used by the front ends.
class FamilyRegistry {
 public:
  static FamilyRegistry with_builtins();

  void add(std::shared_ptr<const OperatorFamily> family);
  // Registers a family from just a name and an apply function.
  void add(std::string name, FunctionalFamily::ApplyFn apply,
           double unit_norm_bound);

  // Throws invalid-argument listing the valid names.
  std::shared_ptr<const OperatorFamily> get(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::shared_ptr<const OperatorFamily>> families_;
};

// Clamps cuts whose nesting or ordering is broken by at most `tolerance`
// (floating-point noise); throws internal-consistency for anything larger.
void repair_nesting(std::vector<Interval>& cuts, double tolerance = 1e-9);

// Fuzzy counterpart of a classical family: the level endpoints of T_n(f; x)
// are the classical operator applied to the endpoint functions of f.
class FuzzyOperatorFamily {
 public:
  explicit FuzzyOperatorFamily(std::shared_ptr<const OperatorFamily> base);

  const OperatorFamily& base() const noexcept { return *base_; }
  std::shared_ptr<const OperatorFamily> base_ptr() const noexcept { return base_; }

  FuzzyNumber apply(std::size_t n, const FuzzyFunction& f, double x) const;
  // Same as apply at every point, sharing node evaluations across points.
  std::vector<FuzzyNumber> apply_all(std::size_t n, const FuzzyFunction& f,
                                     std::span<const double> xs) const;

 private:
  std::shared_ptr<const OperatorFamily> base_;
};

FuzzyOperatorFamily lift_fuzzy(std::shared_ptr<const OperatorFamily> base);

// ||T_n(e_i) - e_i|| on the grid, i in {0, 1, 2}.
double korovkin_norm(const OperatorFamily& base, std::size_t n, int i,
                     const DomainGrid& grid);

ScalarFunction test_function(int i);

}  // namespace fuzzykor
