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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fuzzykor/error.hpp"
#include "fuzzykor/fuzzy_function.hpp"
#include "oracles.hpp"

using namespace fuzzykor;

namespace {

const AlphaGrid kAlpha = AlphaGrid::uniform(kDefaultAlphaIntervals);

oracle::Tri f1_tri(double x) {
  const double s = std::sin(std::numbers::pi * x);
  return {s - 0.25, s, s + 0.25};
}

oracle::Tri f2_tri(double x) {
  return {x * x, x * x + x * (1 - x), x * x + 1};
}

std::vector<double> pts(const DomainGrid& g) { return {g.points().begin(), g.points().end()}; }

}  // namespace

TEST_CASE("domain grids") {
  const DomainGrid g = DomainGrid::uniform(0, 1, kDefaultDomainPoints);
  CHECK(g.size() == 1001);
  CHECK(g[500] == 0.5);
  CHECK(g.b() == 1.0);
  CHECK(DomainGrid::uniform(0, 1, 201)[100] == 0.5);
  CHECK(g.d() == 1.0);
  CHECK_THROWS_AS(DomainGrid::uniform(0, 1, 1), Error);
  CHECK_THROWS_AS(DomainGrid::from_points({0.0, 0.5, 0.25}), Error);
}

TEST_CASE("catalog lookup") {
  CHECK(catalog_names() == std::vector<std::string>{"e0", "e1", "e2", "f1", "f2"});
  try {
    (void)catalog_function("nope", kAlpha);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
    const std::string msg = e.what();
    for (const auto& n : catalog_names()) CHECK(msg.find(n) != std::string::npos);
  }
}

TEST_CASE("catalog functions match their defining formulas") {
  const FuzzyFunction f1 = catalog_function("f1", kAlpha);
  const FuzzyFunction f2 = catalog_function("f2", kAlpha);
  const FuzzyFunction e2 = catalog_function("e2", kAlpha);
  CHECK(f1.is_level_affine());
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    for (std::size_t k = 0; k < kAlpha.size(); k += 7) {
      const auto [l1, h1] = oracle::tri_cut(f1_tri(x), kAlpha[k]);
      const auto [l2, h2] = oracle::tri_cut(f2_tri(x), kAlpha[k]);
      CHECK(f1.cut(k, x).lo == doctest::Approx(l1).epsilon(1e-14));
      CHECK(f1.cut(k, x).hi == doctest::Approx(h1).epsilon(1e-14));
      CHECK(f2.cut(k, x).lo == doctest::Approx(l2).epsilon(1e-14));
      CHECK(f2.cut(k, x).hi == doctest::Approx(h2).epsilon(1e-14));
      CHECK(e2.cut(k, x) == Interval{x * x, x * x});
    }
    CHECK(validate(f1(x)).empty());
    CHECK(validate(f2(x)).empty());
    CHECK(f1.slice(0, Side::kUpper)(x) == f1.cut(0, x).hi);
  }
}

TEST_CASE("general fuzzy functions") {
  const FuzzyFunction g = FuzzyFunction::general(
      "bump", 0, 1, kAlpha, [](double a, double x) {
        return Interval{x - (1 - a) * x * x, x + (1 - a) * (1 - x)};
      });
  CHECK_FALSE(g.is_level_affine());
  CHECK(g.cut(0, 0.5) == Interval{0.25, 1.0});
  CHECK(g.endpoint(kAlpha.size() - 1, Side::kLower, 0.5) == 0.5);
}

TEST_CASE("sup distance between catalog entries") {
  const DomainGrid grid = DomainGrid::uniform(0, 1, kDefaultDomainPoints);
  const FuzzyFunction f1 = catalog_function("f1", kAlpha);
  const FuzzyFunction f2 = catalog_function("f2", kAlpha);
  const FuzzyFunction e0 = catalog_function("e0", kAlpha);
  double want12 = 0.0, want10 = 0.0;
  for (double x : grid.points()) {
    want12 = std::max(want12, oracle::tri_distance(f1_tri(x), f2_tri(x)));
    want10 = std::max(want10, oracle::tri_distance(f1_tri(x), {1, 1, 1}));
  }
  CHECK(metric_Dstar(f1, f2, grid) == doctest::Approx(want12).epsilon(1e-13));
  CHECK(metric_Dstar(f1, e0, grid) == doctest::Approx(want10).epsilon(1e-13));
  CHECK(metric_Dstar(f1, e0, grid) == doctest::Approx(1.25));
  CHECK(metric_Dstar(f1, f1, grid) == 0.0);
}

TEST_CASE("classical modulus against brute force") {
  const DomainGrid grid = DomainGrid::uniform(0, 1, 201);
  const auto g = [](double x) { return std::sin(std::numbers::pi * x); };
  for (double delta : {0.003, 0.01, 0.1, 0.5, 2.0}) {
    CHECK(modulus_classical(g, delta, grid) ==
          doctest::Approx(oracle::modulus_bruteforce(g, pts(grid), delta)).epsilon(1e-15));
  }
  // on the grid, the sine modulus is attained at the ends: sin(pi delta)
  CHECK(modulus_classical(g, 0.1, DomainGrid::uniform(0, 1, kDefaultDomainPoints)) ==
        doctest::Approx(std::sin(0.1 * std::numbers::pi)).epsilon(1e-14));
  CHECK_THROWS_AS(modulus_classical(g, 0.0, grid), Error);
  CHECK_THROWS_AS(modulus_classical(g, -1.0, grid), Error);
}

TEST_CASE("fuzzy modulus against brute force and the level-wise form") {
  const DomainGrid grid = DomainGrid::uniform(0, 1, 101);
  for (const auto& name : catalog_names()) {
    const FuzzyFunction f = catalog_function(name, kAlpha);
    const auto table = tabulate(f, grid);
    for (double delta : {0.01, 0.1, 0.5}) {
      double brute = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
          if (std::fabs(grid[i] - grid[j]) <= delta * (1 + 1e-12)) {
            brute = std::max(brute, metric_D(table[i], table[j]));
          }
        }
      }
      const double direct = modulus_fuzzy(f, delta, grid);
      CHECK(direct == doctest::Approx(brute).epsilon(1e-15));
      CHECK(std::fabs(modulus_via_lemma(f, delta, grid) - direct) <= 1e-12);
    }
  }
}

TEST_CASE("endpoint bounds") {
  const DomainGrid grid = DomainGrid::uniform(0, 1, kDefaultDomainPoints);
  const FuzzyFunction f1 = catalog_function("f1", kAlpha);
  CHECK(endpoint_sup_norm(f1, 0.0, Side::kUpper, grid) == doctest::Approx(1.25));
  CHECK(endpoint_sup_norm(f1, 1.0, Side::kLower, grid) == doctest::Approx(1.0));
  CHECK(fuzzy_sup_bound(tabulate(f1, grid)) == doctest::Approx(1.25));
}

TEST_CASE("tabulation csv") {
  const FuzzyFunction f = catalog_function("f2", AlphaGrid::uniform(2));
  std::ostringstream out;
  write_tabulation_csv(f, DomainGrid::uniform(0, 1, 3), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,alpha,lo,hi");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);
  CHECK(out.str().find("\n0.5,0.5,") != std::string::npos);
}

TEST_CASE("small worked examples for sup metrics and moduli") {
  const DomainGrid grid = DomainGrid::uniform(0, 1, 101);
  const auto band = [](double shift) {
    return FuzzyFunction::level_affine("band", 0, 1, kAlpha, [shift](double x) {
      return std::pair{Interval{x - 1 + shift, x + 1 + shift}, Interval{x + shift, x + shift}};
    });
  };
  CHECK(metric_Dstar(band(0), band(0.3), grid) == doctest::Approx(0.3).epsilon(1e-14));
  const auto zero = crisp_function("zero", [](double) { return 0.0; }, 0, 1, kAlpha);
  const auto seven = crisp_function("seven", [](double) { return -7.0; }, 0, 1, kAlpha);
  CHECK(metric_Dstar(zero, seven, grid) == 7.0);

  CHECK(sup_norm([](double) { return 0.0; }, grid) == 0.0);
  CHECK(sup_norm([](double x) { return x; }, grid) == 1.0);
  CHECK(sup_norm([](double x) { return x * (1 - x); }, grid) == 0.25);

  CHECK(modulus_classical([](double) { return 3.0; }, 0.1, grid) == 0.0);
  CHECK(modulus_classical([](double x) { return x; }, 0.1, grid) ==
        doctest::Approx(0.1).epsilon(1e-14));
  const auto id = crisp_function("id", [](double x) { return x; }, 0, 1, kAlpha);
  CHECK(modulus_fuzzy(id, 0.2, grid) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(modulus_fuzzy(seven, 0.2, grid) == 0.0);
  CHECK(modulus_via_lemma(seven, 0.2, grid) == 0.0);
  CHECK_THROWS_AS(modulus_via_lemma(id, 0.0, grid), Error);

  CHECK(endpoint_sup_norm(zero, 0.0, Side::kUpper, grid) == 0.0);
  CHECK(endpoint_sup_norm(band(0), 0.0, Side::kUpper, grid) == 2.0);
  CHECK_THROWS_AS(endpoint_sup_norm(band(0), 0.005, Side::kUpper, grid), Error);
}
