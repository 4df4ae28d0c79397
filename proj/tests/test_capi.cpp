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
#include <sstream>
#include <string>

#include "fuzzykor.h"

namespace {

double square(double y, void*) { return y * y; }

double alternating(uint64_t n, void*) { return n % 2 ? 1.0 : -1.0; }

// A custom family: T_n g(x) = g(x) (1 - 1/(n+1)) + g(1) / (n + 1).
double custom_apply(uint64_t n, fk_scalar_fn g, void* g_user, double x, void*) {
  const double w = 1.0 / (n + 1.0);
  return (1 - w) * g(x, g_user) + w * g(1.0, g_user);
}

std::string slurp(const char* path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("fuzzy numbers through the C interface") {
  fk_fuzzy* x = nullptr;
  fk_fuzzy* y = nullptr;
  fk_fuzzy* s = nullptr;
  REQUIRE(fk_fuzzy_triangular(0, 1, 2, 101, &x) == FK_OK);
  REQUIRE(fk_fuzzy_triangular(0, 1, 3, 101, &y) == FK_OK);
  CHECK(fk_fuzzy_levels(x) == 101);
  double d = -1;
  CHECK(fk_fuzzy_distance(x, y, &d) == FK_OK);
  CHECK(d == 1.0);
  int leq = -1;
  CHECK(fk_fuzzy_leq(x, y, &leq) == FK_OK);
  CHECK(leq == 1);
  CHECK(fk_fuzzy_add(x, y, &s) == FK_OK);
  double alpha = 0, lo = 0, hi = 0;
  CHECK(fk_fuzzy_cut(s, 0, &alpha, &lo, &hi) == FK_OK);
  CHECK(alpha == 0.0);
  CHECK(lo == 0.0);
  CHECK(hi == 5.0);
  CHECK(fk_fuzzy_cut(s, 101, &alpha, &lo, &hi) == FK_INVALID_ARGUMENT);

  size_t needed = 0;
  CHECK(fk_fuzzy_to_text(x, nullptr, 0, &needed) == FK_OK);
  std::string buf(needed + 1, '\0');
  CHECK(fk_fuzzy_to_text(x, buf.data(), buf.size(), &needed) == FK_OK);
  fk_fuzzy* back = nullptr;
  CHECK(fk_fuzzy_parse(buf.c_str(), &back) == FK_OK);
  CHECK(fk_fuzzy_distance(x, back, &d) == FK_OK);
  CHECK(d == 0.0);
  CHECK(fk_fuzzy_to_text(x, buf.data(), 3, &needed) == FK_INVALID_ARGUMENT);

  const double lo_bad[] = {0.0, 0.7, 0.5};
  const double hi_bad[] = {2.0, 1.5, 0.5};
  fk_fuzzy* bad = nullptr;
  CHECK(fk_fuzzy_from_cuts(3, lo_bad, hi_bad, &bad) == FK_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(fk_last_error()).size() > 0);
  CHECK(fk_fuzzy_triangular(2, 1, 0, 101, &bad) == FK_INVALID_ARGUMENT);
  CHECK(fk_fuzzy_triangular(0, 1, 2, 1, &bad) == FK_INVALID_ARGUMENT);

  uint64_t failures = 1;
  char msg[64];
  CHECK(fk_check_fuzzy_core(3, 100, 11, &failures, msg, sizeof msg) == FK_OK);
  CHECK(failures == 0);

  for (fk_fuzzy* p : {x, y, s, back}) fk_fuzzy_free(p);
  fk_fuzzy_free(nullptr);
}

TEST_CASE("functions and operators through the C interface") {
  CHECK(std::string(fk_catalog_names()) == "e0,e1,e2,f1,f2");
  CHECK(std::string(fk_operator_names()) == "bernstein,perturbed-bernstein");
  fk_function* f1 = nullptr;
  fk_function* e0 = nullptr;
  REQUIRE(fk_function_create("f1", 101, &f1) == FK_OK);
  REQUIRE(fk_function_create("e0", 101, &e0) == FK_OK);
  fk_function* none = nullptr;
  CHECK(fk_function_create("f9", 101, &none) == FK_INVALID_ARGUMENT);
  CHECK(std::string(fk_last_error()).find("f2") != std::string::npos);

  double v = 0;
  CHECK(fk_metric_dstar(f1, e0, 1001, &v) == FK_OK);
  CHECK(v == doctest::Approx(1.25));
  double a = 0, b = 0;
  CHECK(fk_modulus_fuzzy(f1, 0.1, 1001, &a) == FK_OK);
  CHECK(fk_modulus_lemma(f1, 0.1, 1001, &b) == FK_OK);
  CHECK(std::fabs(a - b) <= 1e-12);
  CHECK(fk_modulus_fuzzy(f1, 0.0, 1001, &a) == FK_INVALID_ARGUMENT);
  fk_fuzzy* at = nullptr;
  CHECK(fk_function_eval(f1, 2.0, &at) == FK_INVALID_ARGUMENT);

  fk_operator* bern = nullptr;
  REQUIRE(fk_operator_create("bernstein", &bern) == FK_OK);
  CHECK(fk_operator_apply(bern, 10, square, nullptr, 0.3, &v) == FK_OK);
  CHECK(std::fabs(v - (0.09 + 0.021)) <= 1e-15);
  CHECK(fk_korovkin_norm(bern, 100, 2, 1001, &v) == FK_OK);
  CHECK(std::fabs(v - 0.0025) <= 1e-9);
  fk_operator* bogus = nullptr;
  CHECK(fk_operator_create("bogus", &bogus) == FK_INVALID_ARGUMENT);
  CHECK(std::string(fk_last_error()).find("perturbed-bernstein") != std::string::npos);

  fk_operator* custom = nullptr;
  REQUIRE(fk_operator_create_custom("pull-right", custom_apply, nullptr, 1.0, &custom) ==
          FK_OK);
  CHECK(fk_operator_apply(custom, 3, square, nullptr, 0.5, &v) == FK_OK);
  CHECK(v == doctest::Approx(0.75 * 0.25 + 0.25));

  CHECK(fk_function_write_csv(f1, 3, "/nonexistent-dir/f.csv") == FK_IO_ERROR);
  CHECK(fk_function_write_csv(f1, 3, "fuzzykor_capi_f1.csv") == FK_OK);
  CHECK(slurp("fuzzykor_capi_f1.csv").rfind("x,alpha,lo,hi\n", 0) == 0);
  std::remove("fuzzykor_capi_f1.csv");

  fk_operator_free(custom);
  fk_operator_free(bern);
  fk_function_free(f1);
  fk_function_free(e0);
}

TEST_CASE("summability and experiments through the C interface") {
  fk_method* abel = nullptr;
  REQUIRE(fk_method_create("abel", &abel) == FK_OK);
  fk_method* bad = nullptr;
  CHECK(fk_method_create("nope", &bad) == FK_INVALID_ARGUMENT);
  CHECK(fk_method_create("weights:/nonexistent/file", &bad) == FK_IO_ERROR);

  double value = 0, tail = 0;
  uint64_t terms = 0;
  CHECK(fk_transform_sequence(alternating, nullptr, 0.9, abel, nullptr, &value, &terms,
                              &tail) == FK_OK);
  CHECK(std::fabs(value - 0.1 / 1.9) <= 1e-8);
  CHECK(terms > 0);
  fk_settings tight = fk_default_settings();
  tight.n_cap = 10;
  CHECK(fk_transform_sequence(alternating, nullptr, 0.9, abel, &tight, &value, &terms,
                              &tail) == FK_TRUNCATION_FAILURE);
  CHECK(fk_cube_series(0.9, 1e-12, &value) == FK_OK);
  CHECK(std::fabs(value - 0.154421985825447481) <= 1e-13);
  CHECK(fk_cube_series(1.5, 1e-12, &value) == FK_INVALID_ARGUMENT);

  fk_operator* op = nullptr;
  fk_function* f1 = nullptr;
  REQUIRE(fk_operator_create("perturbed-bernstein", &op) == FK_OK);
  REQUIRE(fk_function_create("f1", 101, &f1) == FK_OK);
  fk_settings s = fk_default_settings();
  s.domain_points = 21;

  const uint64_t ns[] = {1, 2, 8};
  fk_report* classical = nullptr;
  REQUIRE(fk_run_classical(op, f1, ns, 3, &s, &classical) == FK_OK);
  CHECK(fk_report_rows(classical) == 3);
  fk_row row;
  CHECK(fk_report_row(classical, 2, &row) == FK_OK);
  CHECK(row.norm_e0 == 1.0);
  CHECK(fk_report_row(classical, 3, &row) == FK_INVALID_ARGUMENT);

  const double ts[] = {0.9, 0.95};
  fk_report* summed = nullptr;
  REQUIRE(fk_run_summability(op, f1, abel, ts, 2, &s, &summed) == FK_OK);
  CHECK(fk_report_set_experiment(summed, "renamed") == FK_OK);
  const fk_report* both[] = {classical, summed};
  CHECK(fk_reports_write(both, 2, FK_FORMAT_CSV, "fuzzykor_capi_report.csv") == FK_OK);
  const std::string csv = slurp("fuzzykor_capi_report.csv");
  CHECK(csv.find("\nrenamed,perturbed-bernstein,abel,0.90000000000000002,") !=
        std::string::npos);
  std::remove("fuzzykor_capi_report.csv");
  CHECK(fk_reports_write(both, 2, FK_FORMAT_JSON, "/nonexistent-dir/r.json") == FK_IO_ERROR);

  const double bad_t[] = {0.9, 1.0};
  fk_report* none = nullptr;
  CHECK(fk_run_summability(op, f1, abel, bad_t, 2, &s, &none) == FK_INVALID_ARGUMENT);
  fk_settings tiny = s;
  tiny.domain_points = 2;
  CHECK(fk_run_summability(op, f1, abel, ts, 2, &tiny, &none) == FK_INVALID_ARGUMENT);
  tiny = s;
  tiny.n_cap = 5;
  CHECK(fk_run_summability(op, f1, abel, ts, 2, &tiny, &none) == FK_TRUNCATION_FAILURE);

  fk_rate* rate = nullptr;
  REQUIRE(fk_run_rate(op, f1, abel, ts, 2, &s, &rate) == FK_OK);
  CHECK(fk_rate_count(rate) == 2);
  fk_rate_bundle bundle;
  CHECK(fk_rate_get(rate, 1, &bundle) == FK_OK);
  CHECK(bundle.verified == 1);
  CHECK(bundle.t == 0.95);
  CHECK(fk_rate_write(rate, FK_FORMAT_JSON, "fuzzykor_capi_rate.json") == FK_OK);
  CHECK(slurp("fuzzykor_capi_rate.json").find("\"rate\"") != std::string::npos);
  std::remove("fuzzykor_capi_rate.json");

  fk_rate_free(rate);
  fk_report_free(classical);
  fk_report_free(summed);
  fk_function_free(f1);
  fk_operator_free(op);
  fk_method_free(abel);
}

TEST_CASE("null handles are rejected") {
  double v = 0;
  CHECK(fk_fuzzy_distance(nullptr, nullptr, &v) == FK_INVALID_ARGUMENT);
  CHECK(fk_operator_apply(nullptr, 1, square, nullptr, 0.5, &v) == FK_INVALID_ARGUMENT);
  CHECK(fk_report_rows(nullptr) == 0);
  CHECK(std::string(fk_version()) == "0.1.0");
}
