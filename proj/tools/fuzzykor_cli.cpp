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

// fuzzykor command line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzykor.h"

namespace {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,
  kExitTruncation = 3,
  kExitIo = 4,
  kExitInternal = 5,
};

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(fk_status s) {
  switch (s) {
    case FK_OK: return kExitOk;
    case FK_INVALID_ARGUMENT: return kExitInvalid;
    case FK_TRUNCATION_FAILURE: return kExitTruncation;
    case FK_IO_ERROR: return kExitIo;
    case FK_DEGENERATE_DELTA:
    case FK_INTERNAL_ERROR: return kExitInternal;
  }
  return kExitInternal;
}

void check(fk_status s) {
  if (s != FK_OK) throw Failure{exit_code_for(s), fk_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Fuzzy = std::unique_ptr<fk_fuzzy, Deleter<fk_fuzzy, fk_fuzzy_free>>;
using Function = std::unique_ptr<fk_function, Deleter<fk_function, fk_function_free>>;
using Operator = std::unique_ptr<fk_operator, Deleter<fk_operator, fk_operator_free>>;
using Method = std::unique_ptr<fk_method, Deleter<fk_method, fk_method_free>>;
using Report = std::unique_ptr<fk_report, Deleter<fk_report, fk_report_free>>;
using Rate = std::unique_ptr<fk_rate, Deleter<fk_rate, fk_rate_free>>;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  *out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size() && std::isfinite(*out);
}

bool parse_u64(const std::string& s, std::uint64_t* out) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
  errno = 0;
  *out = std::strtoull(s.c_str(), nullptr, 10);
  return errno == 0;
}

// "0.9,0.99,0.999"
std::string parse_t_list(const std::string& text, std::vector<double>* out) {
  out->clear();
  for (const auto& item : split(text, ',')) {
    double t = 0.0;
    if (!parse_double(item, &t)) return "'" + item + "' is not a number";
    if (!(t > 0.0 && t < 1.0)) {
      return "" + item + " is out of range (t must lie in (0,1))";
    }
    out->push_back(t);
  }
  if (out->empty()) return "empty list";
  return {};
}

// "1..30", "8,27,64" or a mix such as "1..100,125"
std::string parse_n_list(const std::string& text, std::vector<std::uint64_t>* out) {
  out->clear();
  for (const auto& item : split(text, ',')) {
    const auto dots = item.find("..");
    std::uint64_t lo = 0, hi = 0;
    if (dots == std::string::npos) {
      if (!parse_u64(item, &lo)) return "'" + item + "' is not a positive integer";
      hi = lo;
    } else if (!parse_u64(item.substr(0, dots), &lo) ||
               !parse_u64(item.substr(dots + 2), &hi)) {
      return "'" + item + "' is not a range a..b";
    }
    if (lo < 1 || hi < lo) return "'" + item + "' must satisfy 1 <= a <= b";
    if (hi - lo > 10'000'000) return "range '" + item + "' is too long";
    for (std::uint64_t n = lo; n <= hi; ++n) out->push_back(n);
  }
  if (out->empty()) return "empty list";
  return {};
}

std::vector<std::uint64_t> default_n_list() {
  std::vector<std::uint64_t> n;
  for (std::uint64_t k = 1; k <= 100; ++k) n.push_back(k);
  for (std::uint64_t m = 5; m <= 10; ++m) n.push_back(m * m * m);
  return n;
}

std::string name_check(const std::string& kind, const std::string& name,
                       const char* valid) {
  for (const auto& v : split(valid, ',')) {
    if (v == name) return {};
  }
  return "unknown " + kind + " '" + name + "' (valid: " + valid + ")";
}

struct Config {
  std::string command;
  std::string op = "perturbed-bernstein";
  std::string function = "f1";
  std::string method = "abel";
  std::string t_text = "0.9,0.99,0.999";
  std::string n_text;
  std::vector<double> t_list{0.9, 0.99, 0.999};
  std::vector<std::uint64_t> n_list = default_n_list();
  std::size_t alpha_levels = 101;
  std::size_t domain_points = 1001;
  double tol = 1e-8;
  std::uint64_t n_cap = 2'000'000;
  std::string format = "csv";
  std::string out = "-";
  std::uint64_t seed = 1;
  std::uint64_t trials = 1000;
};

fk_format format_of(const Config& c) {
  return c.format == "json" ? FK_FORMAT_JSON : FK_FORMAT_CSV;
}

fk_settings settings_of(const Config& c) {
  fk_settings s = fk_default_settings();
  s.domain_points = c.domain_points;
  s.tol = c.tol;
  s.n_cap = c.n_cap;
  return s;
}

Operator make_operator(const Config& c) {
  fk_operator* op = nullptr;
  check(fk_operator_create(c.op.c_str(), &op));
  return Operator(op);
}

Function make_function(const Config& c, const std::string& name) {
  fk_function* f = nullptr;
  check(fk_function_create(name.c_str(), c.alpha_levels, &f));
  return Function(f);
}

Method make_method(const Config& c) {
  fk_method* m = nullptr;
  check(fk_method_create(c.method.c_str(), &m));
  return Method(m);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw Failure{kExitIo, "failed writing to stdout"};
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure{kExitIo, "cannot open " + path + " for writing"};
  out << text;
  out.flush();
  if (!out) throw Failure{kExitIo, "failed writing " + path};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_validate(const Config& c) {
  std::uint64_t failures = 0;
  char msg[512] = {0};
  check(fk_check_fuzzy_core(c.seed, c.trials, c.alpha_levels, &failures, msg, sizeof msg));
  if (c.format == "json") {
    nlohmann::ordered_json j;
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["alpha_levels"] = c.alpha_levels;
    j["failures"] = failures;
    write_text(c.out, j.dump(2) + "\n");
  } else {
    write_text(c.out, "seed,trials,alpha_levels,failures\n" + std::to_string(c.seed) +
                          "," + std::to_string(c.trials) + "," +
                          std::to_string(c.alpha_levels) + "," +
                          std::to_string(failures) + "\n");
  }
  if (failures != 0) {
    std::cerr << "fuzzykor: " << failures << " invariant failures, first: " << msg << "\n";
    return kExitInternal;
  }
  return kExitOk;
}

int run_metrics(const Config& c) {
  const Function f = make_function(c, c.function);
  struct Line {
    std::string kind, other;
    double delta, value;
  };
  std::vector<Line> lines;
  for (const auto& name : split(fk_catalog_names(), ',')) {
    const Function g = make_function(c, name);
    double d = 0.0;
    check(fk_metric_dstar(f.get(), g.get(), c.domain_points, &d));
    lines.push_back({"dstar", name, 0.0, d});
  }
  for (double delta : {0.01, 0.1, 0.5}) {
    double direct = 0.0, lemma = 0.0;
    check(fk_modulus_fuzzy(f.get(), delta, c.domain_points, &direct));
    check(fk_modulus_lemma(f.get(), delta, c.domain_points, &lemma));
    lines.push_back({"modulus_fuzzy", "", delta, direct});
    lines.push_back({"modulus_lemma", "", delta, lemma});
  }
  std::string text;
  if (c.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& l : lines) {
      nlohmann::ordered_json r;
      r["quantity"] = l.kind;
      r["function"] = c.function;
      r["other"] = l.other;
      r["delta"] = l.delta;
      r["value"] = l.value;
      rows.push_back(r);
    }
    text = nlohmann::ordered_json{{"metrics", rows}}.dump(2) + "\n";
  } else {
    text = "quantity,function,other,delta,value\n";
    for (const auto& l : lines) {
      text += l.kind + "," + c.function + "," + l.other + "," + fmt(l.delta) + "," +
              fmt(l.value) + "\n";
    }
  }
  write_text(c.out, text);
  return kExitOk;
}

Report classical(const Config& c) {
  const Operator op = make_operator(c);
  const Function f = make_function(c, c.function);
  const fk_settings s = settings_of(c);
  fk_report* r = nullptr;
  check(fk_run_classical(op.get(), f.get(), c.n_list.data(), c.n_list.size(), &s, &r));
  return Report(r);
}

Report summability(const Config& c) {
  const Operator op = make_operator(c);
  const Function f = make_function(c, c.function);
  const Method m = make_method(c);
  const fk_settings s = settings_of(c);
  fk_report* r = nullptr;
  check(fk_run_summability(op.get(), f.get(), m.get(), c.t_list.data(), c.t_list.size(),
                           &s, &r));
  return Report(r);
}

int write_reports(const Config& c, const std::vector<const fk_report*>& reports) {
  check(fk_reports_write(reports.data(), reports.size(), format_of(c), c.out.c_str()));
  return kExitOk;
}

int run_rate(const Config& c) {
  const Operator op = make_operator(c);
  const Function f = make_function(c, c.function);
  const Method m = make_method(c);
  const fk_settings s = settings_of(c);
  fk_rate* raw = nullptr;
  check(fk_run_rate(op.get(), f.get(), m.get(), c.t_list.data(), c.t_list.size(), &s,
                    &raw));
  const Rate rate(raw);
  check(fk_rate_write(rate.get(), format_of(c), c.out.c_str()));
  std::size_t verified = 0;
  for (std::size_t i = 0; i < fk_rate_count(rate.get()); ++i) {
    fk_rate_bundle b;
    check(fk_rate_get(rate.get(), i, &b));
    verified += b.verified ? 1 : 0;
  }
  std::cerr << "fuzzykor: " << verified << " of " << fk_rate_count(rate.get())
            << " rate bundles verified\n";
  return verified == fk_rate_count(rate.get()) ? kExitOk : kExitInternal;
}

int dispatch(const Config& c) {
  if (c.command == "validate") return run_validate(c);
  if (c.command == "metrics") return run_metrics(c);
  if (c.command == "rate") return run_rate(c);
  if (c.command == "korovkin-classical") {
    const Report r = classical(c);
    return write_reports(c, {r.get()});
  }
  if (c.command == "korovkin-psum") {
    const Report r = summability(c);
    return write_reports(c, {r.get()});
  }
  // example1
  const Report a = classical(c);
  const Report b = summability(c);
  check(fk_report_set_experiment(a.get(), "example1-classical"));
  check(fk_report_set_experiment(b.get(), "example1-summability"));
  return write_reports(c, {a.get(), b.get()});
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"fuzzykor: fuzzy Korovkin experiments under power-series summability"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  const std::string operators = fk_operator_names();
  const std::string catalog = fk_catalog_names();
  auto name_validator = [](std::string kind, std::string valid) {
    return CLI::Validator(
        [kind, valid](std::string& v) { return name_check(kind, v, valid.c_str()); },
        "", kind);
  };
  app.add_option("--operator", c.op, "operator family (" + operators + ")")
      ->check(name_validator("operator", operators));
  app.add_option("--function", c.function, "catalog fuzzy function (" + catalog + ")")
      ->check(name_validator("function", catalog));
  app.add_option("--method", c.method, "summability method: abel or weights:<file>")
      ->check(CLI::Validator(
          [](std::string& v) -> std::string {
            if (v == "abel" || v.rfind("weights:", 0) == 0) return {};
            return "unknown method '" + v + "' (valid: abel, weights:<file>)";
          },
          "", "method"));
  app.add_option("--t", c.t_text, "comma list of t values in (0,1), increasing")
      ->check(CLI::Validator([&c](std::string& v) { return parse_t_list(v, &c.t_list); },
                             "", "t-list"));
  app.add_option("--n", c.n_text, "n list: ranges a..b and comma lists")
      ->default_str("1..100,125,216,343,512,729,1000")
      ->check(CLI::Validator([&c](std::string& v) { return parse_n_list(v, &c.n_list); },
                             "", "n-list"));
  app.add_option("--alpha-levels", c.alpha_levels, "number of alpha levels (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1'000'000}));
  app.add_option("--domain-points", c.domain_points, "domain grid points (>= 3)")
      ->check(CLI::Range(std::size_t{3}, std::size_t{100'000'000}));
  app.add_option("--tol", c.tol, "truncation tolerance (> 0)")
      ->check(CLI::PositiveNumber);
  app.add_option("--n-cap", c.n_cap, "maximum number of series terms (>= 1)")
      ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  app.add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "output path, - for stdout");
  app.add_option("--seed", c.seed, "random seed for validate");
  app.add_option("--trials", c.trials, "random trials for validate")
      ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));

  const std::pair<const char*, const char*> commands[] = {
      {"validate", "randomised fuzzy-number invariant checks"},
      {"metrics", "D* between catalog entries and fuzzy moduli of --function"},
      {"korovkin-classical", "classical Korovkin norms over --n"},
      {"korovkin-psum", "summability Korovkin norms over --t"},
      {"rate", "rate bound bundles over --t"},
      {"example1", "classical failure and summability success, one report"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->callback([&c, name = std::string(name)] {
      c.command = name;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "fuzzykor: " << e.what() << " (see --help)\n";
    return kExitInvalid;
  }

  try {
    return dispatch(c);
  } catch (const Failure& f) {
    std::cerr << "fuzzykor: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "fuzzykor: " << e.what() << "\n";
    return kExitInternal;
  }
}
