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

#include "fuzzykor.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "fuzzykor/error.hpp"
#include "fuzzykor/fuzzy_function.hpp"
#include "fuzzykor/fuzzy_number.hpp"
#include "fuzzykor/harness.hpp"
#include "fuzzykor/operators.hpp"
#include "fuzzykor/summability.hpp"

struct fk_fuzzy {
  fuzzykor::FuzzyNumber value;
};
struct fk_function {
  fuzzykor::FuzzyFunction value;
};
struct fk_operator {
  std::shared_ptr<const fuzzykor::OperatorFamily> family;
};
struct fk_method {
  fuzzykor::PowerSeriesMethod value;
};
struct fk_report {
  fuzzykor::KorovkinReport value;
};
struct fk_rate {
  std::vector<fuzzykor::RateBundle> bundles;
};

namespace {

using namespace fuzzykor;

thread_local std::string last_error;

fk_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return FK_INVALID_ARGUMENT;
    case ErrorCode::kTruncationFailure: return FK_TRUNCATION_FAILURE;
    case ErrorCode::kIo: return FK_IO_ERROR;
    case ErrorCode::kDegenerateDelta: return FK_DEGENERATE_DELTA;
    case ErrorCode::kInternalConsistency: return FK_INTERNAL_ERROR;
  }
  return FK_INTERNAL_ERROR;
}

template <typename Body>
fk_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return FK_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FK_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FK_INTERNAL_ERROR;
  }
}

template <typename T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw_invalid(std::string(what) + " is null");
}

AlphaGrid level_grid(std::size_t levels) {
  if (levels < 2) throw_invalid("alpha grid needs at least 2 levels");
  return AlphaGrid::uniform(levels - 1);
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

ExperimentSettings to_settings(const fk_settings* s, const fk_operator* op,
                               const fk_function* f) {
  const fk_settings defaults = fk_default_settings();
  if (s == nullptr) s = &defaults;
  if (s->domain_points < 3) throw_invalid("domain grid needs at least 3 points");
  ExperimentSettings out;
  out.alpha = f->value.grid();
  out.domain = DomainGrid::uniform(op->family->a(), op->family->b(), s->domain_points);
  out.policy.tol = s->tol;
  out.policy.n_cap = s->n_cap;
  if (s->bound_hint > 0.0) out.policy.bound_hint = s->bound_hint;
  out.policy.validate();
  return out;
}

TruncationPolicy to_policy(const fk_settings* s) {
  const fk_settings defaults = fk_default_settings();
  if (s == nullptr) s = &defaults;
  TruncationPolicy p;
  p.tol = s->tol;
  p.n_cap = s->n_cap;
  if (s->bound_hint > 0.0) p.bound_hint = s->bound_hint;
  p.validate();
  return p;
}

fk_fuzzy* wrap(FuzzyNumber x) { return new fk_fuzzy{std::move(x)}; }

double call_scalar(double y, void* user) {
  return (*static_cast<const ScalarFunction*>(user))(y);
}

void write_to(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(std::cout);
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::kIo, "failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  body(out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path);
}

ReportFormat to_format(fk_format f) {
  switch (f) {
    case FK_FORMAT_CSV: return ReportFormat::kCsv;
    case FK_FORMAT_JSON: return ReportFormat::kJson;
  }
  throw_invalid("unknown report format");
}

}  // namespace

extern "C" {

const char* fk_version(void) { return "0.1.0"; }

const char* fk_last_error(void) { return last_error.c_str(); }

fk_settings fk_default_settings(void) {
  fk_settings s;
  s.domain_points = kDefaultDomainPoints;
  s.tol = 1e-8;
  s.n_cap = 2'000'000;
  s.bound_hint = 0.0;
  return s;
}

fk_status fk_fuzzy_triangular(double a, double b, double c, size_t levels,
                              fk_fuzzy** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(make_triangular(a, b, c, level_grid(levels)));
  });
}

fk_status fk_fuzzy_from_cuts(size_t levels, const double* lo, const double* hi,
                             fk_fuzzy** out) {
  return guarded([&] {
    require(out, "out");
    require(lo, "lo");
    require(hi, "hi");
    std::vector<Interval> cuts(levels);
    for (std::size_t k = 0; k < levels; ++k) cuts[k] = {lo[k], hi[k]};
    *out = wrap(FuzzyNumber::checked(level_grid(levels), std::move(cuts)));
  });
}

fk_status fk_fuzzy_parse(const char* text, fk_fuzzy** out) {
  return guarded([&] {
    require(out, "out");
    require(text, "text");
    *out = wrap(from_text(text));
  });
}

void fk_fuzzy_free(fk_fuzzy* x) { delete x; }

size_t fk_fuzzy_levels(const fk_fuzzy* x) { return x ? x->value.size() : 0; }

fk_status fk_fuzzy_cut(const fk_fuzzy* x, size_t level, double* alpha, double* lo,
                       double* hi) {
  return guarded([&] {
    require(x, "fuzzy number");
    if (level >= x->value.size()) throw_invalid("level index out of range");
    if (alpha) *alpha = x->value.grid()[level];
    if (lo) *lo = x->value.cut(level).lo;
    if (hi) *hi = x->value.cut(level).hi;
  });
}

fk_status fk_fuzzy_add(const fk_fuzzy* x, const fk_fuzzy* y, fk_fuzzy** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = wrap(add(x->value, y->value));
  });
}

fk_status fk_fuzzy_scale(double lambda, const fk_fuzzy* x, fk_fuzzy** out) {
  return guarded([&] {
    require(x, "x");
    require(out, "out");
    *out = wrap(scale(lambda, x->value));
  });
}

fk_status fk_fuzzy_distance(const fk_fuzzy* x, const fk_fuzzy* y, double* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = metric_D(x->value, y->value);
  });
}

fk_status fk_fuzzy_leq(const fk_fuzzy* x, const fk_fuzzy* y, int* out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    *out = partial_leq(x->value, y->value) ? 1 : 0;
  });
}

fk_status fk_fuzzy_validate(const fk_fuzzy* x, size_t* violations) {
  return guarded([&] {
    require(x, "x");
    require(violations, "violations");
    *violations = validate(x->value).size();
  });
}

fk_status fk_fuzzy_to_text(const fk_fuzzy* x, char* buf, size_t cap, size_t* needed) {
  return guarded([&] {
    require(x, "x");
    const std::string text = to_text(x->value);
    if (needed) *needed = text.size();
    if (buf != nullptr && cap > text.size()) {
      std::memcpy(buf, text.c_str(), text.size() + 1);
    } else if (buf != nullptr) {
      throw_invalid("buffer too small for the text form");
    }
  });
}

fk_status fk_check_fuzzy_core(uint64_t seed, uint64_t trials, size_t levels,
                              uint64_t* failures, char* msg, size_t cap) {
  return guarded([&] {
    require(failures, "failures");
    const CoreCheckSummary s = check_fuzzy_core(seed, trials, level_grid(levels));
    *failures = s.failures;
    if (msg != nullptr && cap > 0) {
      const std::string first = s.messages.empty() ? "" : s.messages.front();
      const std::size_t len = std::min(cap - 1, first.size());
      std::memcpy(msg, first.data(), len);
      msg[len] = '\0';
    }
  });
}

const char* fk_catalog_names(void) {
  static const std::string names = join(catalog_names());
  return names.c_str();
}

fk_status fk_function_create(const char* name, size_t levels, fk_function** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new fk_function{catalog_function(name, level_grid(levels))};
  });
}

void fk_function_free(fk_function* f) { delete f; }

fk_status fk_function_eval(const fk_function* f, double x, fk_fuzzy** out) {
  return guarded([&] {
    require(f, "function");
    require(out, "out");
    if (!(x >= f->value.a() && x <= f->value.b())) throw_invalid("x outside the domain");
    *out = wrap(f->value(x));
  });
}

fk_status fk_metric_dstar(const fk_function* g, const fk_function* h, size_t points,
                          double* out) {
  return guarded([&] {
    require(g, "g");
    require(h, "h");
    require(out, "out");
    *out = metric_Dstar(g->value, h->value,
                        DomainGrid::uniform(g->value.a(), g->value.b(), points));
  });
}

fk_status fk_modulus_fuzzy(const fk_function* f, double delta, size_t points,
                           double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = modulus_fuzzy(f->value, delta,
                         DomainGrid::uniform(f->value.a(), f->value.b(), points));
  });
}

fk_status fk_modulus_lemma(const fk_function* f, double delta, size_t points,
                           double* out) {
  return guarded([&] {
    require(f, "f");
    require(out, "out");
    *out = modulus_via_lemma(f->value, delta,
                             DomainGrid::uniform(f->value.a(), f->value.b(), points));
  });
}

fk_status fk_function_write_csv(const fk_function* f, size_t points, const char* path) {
  return guarded([&] {
    require(f, "f");
    require(path, "path");
    const auto grid = DomainGrid::uniform(f->value.a(), f->value.b(), points);
    write_to(path, [&](std::ostream& out) { write_tabulation_csv(f->value, grid, out); });
  });
}

const char* fk_operator_names(void) {
  static const std::string names = join(FamilyRegistry::with_builtins().names());
  return names.c_str();
}

fk_status fk_operator_create(const char* name, fk_operator** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new fk_operator{FamilyRegistry::with_builtins().get(name)};
  });
}

fk_status fk_operator_create_custom(const char* name, fk_apply_fn apply, void* user,
                                    double unit_norm_bound, fk_operator** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    if (apply == nullptr) throw_invalid("apply callback is null");
    if (!(unit_norm_bound > 0.0)) throw_invalid("unit norm bound must be positive");
    FunctionalFamily::ApplyFn fn = [apply, user](std::size_t n, const ScalarFunction& g,
                                                 double x) {
      return apply(n, &call_scalar, const_cast<ScalarFunction*>(&g), x, user);
    };
    *out = new fk_operator{
        std::make_shared<FunctionalFamily>(name, std::move(fn), unit_norm_bound)};
  });
}

void fk_operator_free(fk_operator* op) { delete op; }

fk_status fk_operator_apply(const fk_operator* op, uint64_t n, fk_scalar_fn g,
                            void* g_user, double x, double* out) {
  return guarded([&] {
    require(op, "operator");
    require(out, "out");
    if (g == nullptr) throw_invalid("function callback is null");
    if (n == 0) throw_invalid("operator index n must be >= 1");
    *out = op->family->apply(n, [g, g_user](double y) { return g(y, g_user); }, x);
  });
}

fk_status fk_korovkin_norm(const fk_operator* op, uint64_t n, int i, size_t points,
                           double* out) {
  return guarded([&] {
    require(op, "operator");
    require(out, "out");
    if (n == 0) throw_invalid("operator index n must be >= 1");
    *out = korovkin_norm(*op->family, n, i,
                         DomainGrid::uniform(op->family->a(), op->family->b(), points));
  });
}

fk_status fk_method_create(const char* spec, fk_method** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new fk_method{PowerSeriesMethod::from_spec(spec)};
  });
}

fk_status fk_method_from_weights(const double* weights, size_t count, fk_method** out) {
  return guarded([&] {
    require(weights, "weights");
    require(out, "out");
    *out = new fk_method{PowerSeriesMethod::from_weights(
        "weights", std::vector<double>(weights, weights + count))};
  });
}

void fk_method_free(fk_method* m) { delete m; }

fk_status fk_cube_series(double t, double tol, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = cube_series(t, tol);
  });
}

fk_status fk_transform_sequence(fk_sequence_fn a, void* user, double t,
                                const fk_method* m, const fk_settings* s, double* value,
                                uint64_t* terms, double* tail_bound) {
  return guarded([&] {
    require(m, "method");
    require(value, "value");
    if (a == nullptr) throw_invalid("sequence callback is null");
    const SummationResult r = transform_scalar(
        [a, user](std::uint64_t n) { return a(n, user); }, t, m->value, to_policy(s));
    *value = r.value;
    if (terms) *terms = r.terms;
    if (tail_bound) *tail_bound = r.tail_bound;
  });
}

fk_status fk_run_classical(const fk_operator* op, const fk_function* f,
                           const uint64_t* n, size_t count, const fk_settings* s,
                           fk_report** out) {
  return guarded([&] {
    require(op, "operator");
    require(f, "function");
    require(n, "n list");
    require(out, "out");
    const auto settings = to_settings(s, op, f);
    const std::vector<std::uint64_t> ns(n, n + count);
    *out = new fk_report{run_classical(lift_fuzzy(op->family), f->value, ns, settings)};
  });
}

fk_status fk_run_summability(const fk_operator* op, const fk_function* f,
                             const fk_method* m, const double* t, size_t count,
                             const fk_settings* s, fk_report** out) {
  return guarded([&] {
    require(op, "operator");
    require(f, "function");
    require(m, "method");
    require(t, "t list");
    require(out, "out");
    const auto settings = to_settings(s, op, f);
    const std::vector<double> ts(t, t + count);
    *out = new fk_report{
        run_summability(lift_fuzzy(op->family), f->value, m->value, ts, settings)};
  });
}

fk_status fk_run_rate(const fk_operator* op, const fk_function* f, const fk_method* m,
                      const double* t, size_t count, const fk_settings* s,
                      fk_rate** out) {
  return guarded([&] {
    require(op, "operator");
    require(f, "function");
    require(m, "method");
    require(t, "t list");
    require(out, "out");
    const auto settings = to_settings(s, op, f);
    const std::vector<double> ts(t, t + count);
    *out = new fk_rate{run_rate(lift_fuzzy(op->family), f->value, m->value, ts, settings)};
  });
}

void fk_report_free(fk_report* r) { delete r; }

fk_status fk_report_set_experiment(fk_report* r, const char* id) {
  return guarded([&] {
    require(r, "report");
    require(id, "id");
    r->value.experiment = id;
  });
}

size_t fk_report_rows(const fk_report* r) { return r ? r->value.rows.size() : 0; }

fk_status fk_report_row(const fk_report* r, size_t i, fk_row* out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    if (i >= r->value.rows.size()) throw_invalid("row index out of range");
    const KorovkinRow& row = r->value.rows[i];
    *out = {row.t_or_n,  row.norm_e0, row.norm_e1,        row.norm_e2, row.dstar,
            row.gamma_t, row.omega_at_gamma, row.bound_rhs, row.n_used};
  });
}

fk_status fk_reports_write(const fk_report* const* reports, size_t count,
                           fk_format format, const char* path) {
  return guarded([&] {
    require(path, "path");
    if (count > 0) require(reports, "reports");
    std::vector<KorovkinReport> list;
    for (std::size_t i = 0; i < count; ++i) {
      require(reports[i], "report");
      list.push_back(reports[i]->value);
    }
    const ReportFormat fmt = to_format(format);
    write_to(path, [&](std::ostream& out) { write_reports(list, fmt, out); });
  });
}

void fk_rate_free(fk_rate* r) { delete r; }

size_t fk_rate_count(const fk_rate* r) { return r ? r->bundles.size() : 0; }

fk_status fk_rate_get(const fk_rate* r, size_t i, fk_rate_bundle* out) {
  return guarded([&] {
    require(r, "rate result");
    require(out, "out");
    if (i >= r->bundles.size()) throw_invalid("bundle index out of range");
    const RateBundle& b = r->bundles[i];
    *out = {b.t,   b.gamma_t,    b.omega,      b.e0_norm, b.M,
            b.rhs, b.k_constant, b.rhs_k_form, b.dstar,   b.n_used,
            b.verified ? 1 : 0};
  });
}

fk_status fk_rate_write(const fk_rate* r, fk_format format, const char* path) {
  return guarded([&] {
    require(r, "rate result");
    require(path, "path");
    const ReportFormat fmt = to_format(format);
    write_to(path, [&](std::ostream& out) { write_rate_bundles(r->bundles, fmt, out); });
  });
}

}  // extern "C"
