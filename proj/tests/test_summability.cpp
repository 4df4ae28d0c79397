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
#include <cstdio>
#include <fstream>

#include "fuzzykor/error.hpp"
#include "fuzzykor/summability.hpp"
#include "oracles.hpp"

using namespace fuzzykor;

namespace {

const AlphaGrid kAlpha = AlphaGrid::uniform(kDefaultAlphaIntervals);

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "fuzzykor_test_" + name + ".txt";
  std::ofstream(path) << body;
  return path;
}

ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternalConsistency;
}

}  // namespace

TEST_CASE("cube indicator Abel mean") {
  // reference values computed to 18 digits with arbitrary precision
  CHECK(std::fabs(cube_series(0.5) - 0.503906257450580597) <= 1e-15);
  CHECK(std::fabs(cube_series(0.9) - 0.154421985825447481) <= 1e-13);
  CHECK(std::fabs(cube_series(0.99) - 0.0367457449439057544) <= 1e-13);
  CHECK(std::fabs(cube_series(0.999) - 0.00843673471734685) <= 1e-13);
  for (double t : {0.3, 0.9, 0.99, 0.999, 0.9999}) {
    CHECK(std::fabs(cube_series(t) - static_cast<double>(oracle::cube_mean_dense(t))) <=
          1e-12);
  }
  CHECK(cube_series(0.9) > cube_series(0.99));
  CHECK(cube_series(0.99) > cube_series(0.999));
  CHECK(code_of([] { (void)cube_series(1.0); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { (void)cube_series(0.0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("scalar transform of simple sequences") {
  const PowerSeriesMethod abel = PowerSeriesMethod::abel();
  const TruncationPolicy policy;
  for (double t : {0.5, 0.9, 0.99, 0.999}) {
    const auto c = transform_scalar([](std::uint64_t) { return 3.5; }, t, abel, policy);
    CHECK(c.value == 3.5);
    CHECK(c.tail_bound < policy.tol);

    const auto alt = transform_scalar(
        [](std::uint64_t n) { return n % 2 ? 1.0 : -1.0; }, t, abel, policy);
    CHECK(std::fabs(alt.value - (1 - t) / (1 + t)) <= 1e-8);

    // partial sums of 1 - 1 + 1 - ...: Abel value 1/2 in the limit
    const auto ps = transform_scalar(
        [](std::uint64_t n) { return n % 2 ? 1.0 : 0.0; }, t, abel, policy);
    CHECK(std::fabs(ps.value - 1 / (1 + t)) <= 1e-8);

    const auto h = transform_scalar([](std::uint64_t n) { return 1.0 / n; }, t, abel, policy);
    CHECK(std::fabs(h.value - static_cast<double>(oracle::abel_harmonic_dense(t))) <= 1e-8);

    const auto cubes = transform_scalar(
        [](std::uint64_t n) { return cube_indicator(n); }, t, abel, policy);
    CHECK(std::fabs(cubes.value - cube_series(t)) <= 1e-8);
  }
}

TEST_CASE("regularity on a convergent sequence") {
  const auto a = [](std::uint64_t n) { return 2.0 + std::pow(-0.5, static_cast<double>(n)); };
  double prev = 1e9;
  for (double t : {0.9, 0.99, 0.999, 0.9999}) {
    const double err =
        std::fabs(transform_scalar(a, t, PowerSeriesMethod::abel(), {}).value - 2.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("truncation failures carry the achieved bound") {
  TruncationPolicy p;
  p.n_cap = 50;
  try {
    (void)transform_scalar([](std::uint64_t) { return 1.0; }, 0.99, PowerSeriesMethod::abel(),
                           p);
    FAIL("expected a truncation failure");
  } catch (const TruncationError& e) {
    CHECK(e.code() == ErrorCode::kTruncationFailure);
    CHECK(e.achieved_bound() >= p.tol);
  }
  TruncationPolicy bad;
  bad.tol = 0.0;
  CHECK(code_of([&] { bad.validate(); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("terms needed for Abel weights") {
  const PowerSeriesMethod abel = PowerSeriesMethod::abel();
  double tail = 0.0;
  const auto n = terms_needed(0.999, abel, {}, 2.5, &tail);
  // smallest N with 2 * 2.5 * t^N < 1e-8
  const auto want =
      static_cast<std::uint64_t>(std::floor(std::log(1e-8 / 5.0) / std::log(0.999))) + 1;
  CHECK(n == want);
  CHECK(tail < 1e-8);
}

TEST_CASE("weight files") {
  const auto m = PowerSeriesMethod::from_weight_file(temp_file("w1", "1\n0.5\n\n0.25\n"));
  CHECK(m.weight(1) == 1.0);
  CHECK(m.weight(2) == 0.5);
  CHECK(m.weight(3) == 0.25);
  CHECK(m.weight(4) == 0.0);
  CHECK_FALSE(m.partial_sums_diverge());
  CHECK(m.p_of_t(0.5) == doctest::Approx(1 + 0.25 + 0.0625));
  CHECK(m.tail_ratio(0.5)(3) == 0.0);
  const auto seq = transform_scalar([](std::uint64_t n) { return double(n); }, 0.5, m, {});
  CHECK(seq.value == doctest::Approx((1 + 2 * 0.25 + 3 * 0.0625) / 1.3125).epsilon(1e-15));

  CHECK(code_of([] { (void)PowerSeriesMethod::from_weight_file("/nonexistent/w"); }) ==
        ErrorCode::kIo);
  CHECK(code_of([&] {
          (void)PowerSeriesMethod::from_weight_file(temp_file("w2", "0\n1\n"));
        }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] {
          (void)PowerSeriesMethod::from_weight_file(temp_file("w3", "1\n-1\n"));
        }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] {
          (void)PowerSeriesMethod::from_weight_file(temp_file("w4", "1\nabc\n"));
        }) == ErrorCode::kInvalidArgument);
  CHECK(PowerSeriesMethod::from_spec("abel").name() == "abel");
  CHECK(code_of([] { (void)PowerSeriesMethod::from_spec("cesaro"); }) ==
        ErrorCode::kInvalidArgument);
  for (const char* f : {"w1", "w2", "w3", "w4"}) {
    std::remove(("fuzzykor_test_" + std::string(f) + ".txt").c_str());
  }
}

TEST_CASE("kernel and generic summation paths agree") {
  const PerturbedBernsteinFamily fast;
  const FunctionalFamily slow("slow", [](std::size_t n, const ScalarFunction& g, double x) {
    return perturbed_bernstein(n, g, x);
  }, 2.0);
  const std::vector<double> xs{0.0, 0.2, 0.5, 0.85, 1.0};
  const Integrand in[] = {Integrand::scalar(test_function(2), 1.0),
                          Integrand::squared_distance(1.0)};
  const auto a = summed_means(fast, in, xs, 0.9, PowerSeriesMethod::abel(), {});
  const auto b = summed_means(slow, in, xs, 0.9, PowerSeriesMethod::abel(), {});
  CHECK(a.terms == b.terms);
  for (std::size_t o = 0; o < 2; ++o) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(std::fabs(a.values[o][i] - b.values[o][i]) <= 1e-13);
    }
  }
}

TEST_CASE("summed Bernstein moments match closed forms") {
  const BernsteinFamily b;
  const PerturbedBernsteinFamily p;
  const DomainGrid grid = DomainGrid::uniform(0, 1, 41);
  const Integrand in[] = {Integrand::scalar(test_function(0), 1.0),
                          Integrand::scalar(test_function(1), 1.0),
                          Integrand::squared_distance(1.0)};
  for (double t : {0.9, 0.99}) {
    const double h = static_cast<double>(oracle::abel_harmonic_dense(t));
    const auto mb = summed_means(b, in, grid.points(), t, PowerSeriesMethod::abel(), {});
    const auto mp = summed_means(p, in, grid.points(), t, PowerSeriesMethod::abel(), {});
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid[i];
      CHECK(mb.values[0][i] == 1.0);
      CHECK(std::fabs(mb.values[1][i] - x) <= 1e-12);
      CHECK(std::fabs(mb.values[2][i] - x * (1 - x) * h) <= 1e-8);
      CHECK(std::fabs(mp.values[0][i] - (1 + cube_series(t))) <= 1e-8);
    }
  }
}

TEST_CASE("fuzzy summed means: boundary and level routes agree") {
  const FuzzyOperatorFamily lf = lift_fuzzy(std::make_shared<PerturbedBernsteinFamily>());
  const AlphaGrid alpha = AlphaGrid::uniform(10);
  const FuzzyFunction f1 = catalog_function("f1", alpha);
  const std::vector<double> xs{0.0, 0.25, 0.5, 1.0};
  std::uint64_t terms = 0;
  const auto a = transform_fuzzy_all(lf, f1, 0.95, PowerSeriesMethod::abel(), {}, xs,
                                     FuzzyRoute::kAuto, &terms);
  const auto b = transform_fuzzy_all(lf, f1, 0.95, PowerSeriesMethod::abel(), {}, xs,
                                     FuzzyRoute::kAllLevels);
  CHECK(terms > 0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(metric_D(a[i], b[i]) <= 1e-12);
    CHECK(validate(a[i]).empty());
    const FuzzyMean one = transform_fuzzy(lf, f1, 0.95, PowerSeriesMethod::abel(), {}, xs[i]);
    CHECK(metric_D(one.value, a[i]) <= 1e-12);
  }
}

TEST_CASE("transformed functions") {
  const DomainGrid grid = DomainGrid::uniform(0, 1, 51);
  const auto abel = PowerSeriesMethod::abel();
  for (double t : {0.5, 0.9, 0.99}) {
    const auto one = transform_function(BernsteinFamily{}, test_function(0), t, abel, {}, grid);
    for (double v : one.values) CHECK(v == 1.0);
  }
  const auto pe0 =
      transform_function(PerturbedBernsteinFamily{}, test_function(0), 0.99, abel, {}, grid);
  for (double v : pe0.values) CHECK(std::fabs(v - (1 + cube_series(0.99))) <= 1e-8);
  const double s = static_cast<double>(oracle::abel_harmonic_dense(0.99));
  const auto be2 = transform_function(BernsteinFamily{}, test_function(2), 0.99, abel, {}, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    CHECK(std::fabs(be2.values[i] - (x * x + x * (1 - x) * s)) <= 1e-8);
  }
  CHECK(be2.tail_bound < 1e-8);

  const auto c = crisp_function("c", [](double) { return 2.25; }, 0, 1, kAlpha);
  const auto lf = lift_fuzzy(std::make_shared<BernsteinFamily>());
  CHECK(transform_fuzzy(lf, c, 0.9, abel, {}, 0.3).value == crisp(2.25, kAlpha));
}

TEST_CASE("Abel weights: declared properties") {
  const auto abel = PowerSeriesMethod::abel();
  CHECK(abel.partial_sums_diverge());
  CHECK(abel.has_closed_form());
  CHECK(abel.p_of_t(0.75) == 4.0);
  double prev = 0.0;
  for (std::uint64_t n : {10u, 100u, 1000u, 10000u}) {
    const double p = abel.partial_p(n, 1.0 - 1e-12);
    CHECK(p > prev);
    prev = p;
  }
  CHECK(prev > 9999.0);
  CHECK(abel.tail_ratio(0.9)(10) == doctest::Approx(std::pow(0.9, 10)).epsilon(1e-14));
}
