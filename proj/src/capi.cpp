#include "lambdavar.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <sstream>
#include <string>

#include "lambdavar/error.hpp"
#include "lambdavar/experiments.hpp"

struct lvar_lambda {
  lambdavar::LambdaSequence seq;
};

struct lvar_function {
  lambdavar::Function fn;
};

struct lvar_report {
  lambdavar::ExperimentReport report;
};

namespace {

using namespace lambdavar;

thread_local std::string g_last_error;

lvar_status fail(lvar_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
lvar_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return LVAR_OK;
  } catch (const InvalidInput& e) {
    return fail(LVAR_INVALID_INPUT, e.what());
  } catch (const DomainError& e) {
    return fail(LVAR_DOMAIN, e.what());
  } catch (const ResourceError& e) {
    return fail(LVAR_RESOURCE, e.what());
  } catch (const InternalError& e) {
    return fail(LVAR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LVAR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(LVAR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw InvalidInput(std::string(name) + ": null pointer");
}

std::vector<NamedLambda> parse_families(const char* list) {
  std::vector<NamedLambda> out;
  if (list == nullptr || *list == '\0') return default_lambda_families();
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "constant") out.push_back({"constant(1)", LambdaSequence::constant(1.0)});
    else if (item == "linear") out.push_back({"linear(1,0)", LambdaSequence::linear(1.0, 0.0)});
    else if (item == "power") out.push_back({"power(0.5)", LambdaSequence::power(0.5)});
    else if (item == "nlog") out.push_back({"nlog", LambdaSequence::nlog()});
    else throw InvalidInput("lambdas: unknown family '" + item + "'");
  }
  if (out.empty()) throw InvalidInput("lambdas: empty family list");
  return out;
}

const BernsteinPoly& as_bernstein(const lvar_function* p) {
  require(p, "function");
  const auto* b = std::get_if<BernsteinPoly>(&p->fn);
  if (b == nullptr) throw InvalidInput("function: expected a bernstein polynomial");
  return *b;
}

}  // namespace

extern "C" {

const char* lvar_last_error(void) { return g_last_error.c_str(); }

const char* lvar_version(void) { return "1.0.0"; }

void lvar_string_free(char* s) { std::free(s); }

lvar_status lvar_format_number(double v, char* buf, size_t cap) {
  return guarded([&] {
    require(buf, "buf");
    const std::string s = format_number(v);
    if (s.size() + 1 > cap) throw InvalidInput("cap: buffer too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
  });
}

// ---- lambda sequences

lvar_status lvar_lambda_from_json(const char* json, lvar_lambda** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new lvar_lambda{lambda_from_json_text(json)};
  });
}

lvar_status lvar_lambda_to_json(const lvar_lambda* seq, char** out) {
  return guarded([&] {
    require(seq, "lambda");
    require(out, "out");
    *out = dup_string(dump_json(lambda_to_json(seq->seq)));
  });
}

void lvar_lambda_free(lvar_lambda* seq) { delete seq; }

lvar_status lvar_lambda_term(const lvar_lambda* seq, size_t n, double* out) {
  return guarded([&] {
    require(seq, "lambda");
    require(out, "out");
    *out = seq->seq.term(n);
  });
}

lvar_status lvar_lambda_tail(const lvar_lambda* seq, size_t m, lvar_lambda** out) {
  return guarded([&] {
    require(seq, "lambda");
    require(out, "out");
    *out = new lvar_lambda{seq->seq.tail(m)};
  });
}

lvar_status lvar_shao_sablin_ratio(const lvar_lambda* seq, size_t n, double* out) {
  return guarded([&] {
    require(seq, "lambda");
    require(out, "out");
    *out = shao_sablin_ratio(seq->seq, n);
  });
}

lvar_status lvar_shao_sablin_profile(const lvar_lambda* seq, const size_t* points, size_t count,
                                     char** out_json) {
  return guarded([&] {
    require(seq, "lambda");
    require(out_json, "out");
    if (count > 0) require(points, "points");
    Json rows = Json::array();
    for (size_t i = 0; i < count; ++i) {
      rows.push_back(Json{{"n", points[i]}, {"ratio", shao_sablin_ratio(seq->seq, points[i])}});
    }
    *out_json = dup_string(dump_json(
        Json{{"lambda", lambda_to_json(seq->seq)}, {"profile", std::move(rows)}}));
  });
}

// ---- functions

lvar_status lvar_function_from_json(const char* json, lvar_function** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new lvar_function{function_from_json_text(json)};
  });
}

lvar_status lvar_function_named(const char* name, lvar_function** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new lvar_function{named_function(name)};
  });
}

lvar_status lvar_function_to_json(const lvar_function* f, char** out) {
  return guarded([&] {
    require(f, "function");
    require(out, "out");
    *out = dup_string(dump_json(function_to_json(f->fn)));
  });
}

void lvar_function_free(lvar_function* f) { delete f; }

lvar_status lvar_function_eval(const lvar_function* f, double x, double* out) {
  return guarded([&] {
    require(f, "function");
    require(out, "out");
    *out = eval(f->fn, x);
  });
}

lvar_status lvar_apply_operator(const lvar_function* f, lvar_operator op, size_t n,
                                lvar_function** out) {
  return guarded([&] {
    require(f, "function");
    require(out, "out");
    if (op == LVAR_BERNSTEIN) {
      *out = new lvar_function{bernstein_of(f->fn, n)};
    } else if (op == LVAR_KANTOROVICH) {
      if (const auto* g = std::get_if<PiecewiseLinear>(&f->fn)) {
        *out = new lvar_function{kantorovich_of(*g, n)};
      } else if (const auto* s = std::get_if<StepFunction>(&f->fn)) {
        *out = new lvar_function{kantorovich_of(*s, n)};
      } else {
        throw InvalidInput("type: kantorovich needs a plf or step function");
      }
    } else {
      throw InvalidInput("op: unknown operator");
    }
  });
}

lvar_status lvar_bernstein_coefficients(const lvar_function* p, double* buf, size_t cap,
                                        size_t* count) {
  return guarded([&] {
    require(count, "count");
    const auto& c = as_bernstein(p).coeffs();
    *count = c.size();
    if (buf != nullptr) std::copy_n(c.begin(), std::min(cap, c.size()), buf);
  });
}

lvar_status lvar_monotone_certificate(const lvar_function* p, lvar_monotonicity* out) {
  return guarded([&] {
    require(out, "out");
    switch (monotone_certificate(as_bernstein(p))) {
      case Monotonicity::Increasing: *out = LVAR_INCREASING; break;
      case Monotonicity::Decreasing: *out = LVAR_DECREASING; break;
      case Monotonicity::Constant: *out = LVAR_CONSTANT; break;
      case Monotonicity::NotMonotone: *out = LVAR_NOT_MONOTONE; break;
    }
  });
}

// ---- variation

void lvar_variation_options_default(lvar_variation_options* opts) {
  if (opts == nullptr) return;
  opts->tail = 0;
  opts->delta = 0.0;
  opts->resolution = 16;
}

lvar_status lvar_variation(const lvar_function* f, const lvar_lambda* seq,
                           const lvar_variation_options* opts, char** out_json) {
  return guarded([&] {
    require(f, "function");
    require(seq, "lambda");
    require(out_json, "out");
    lvar_variation_options o;
    lvar_variation_options_default(&o);
    if (opts != nullptr) o = *opts;
    const LambdaSequence s = seq->seq.tail(o.tail);
    const VariationResult r = o.delta > 0.0 ? restricted_variation(f->fn, s, o.delta, o.resolution)
                                            : lambda_variation(f->fn, s);
    *out_json = dup_string(dump_json(variation_to_json(r)));
  });
}

lvar_status lvar_variation_value(const lvar_function* f, const lvar_lambda* seq, double* out) {
  return guarded([&] {
    require(f, "function");
    require(seq, "lambda");
    require(out, "out");
    *out = lambda_variation(f->fn, seq->seq).value;
  });
}

lvar_status lvar_norm(const lvar_function* f, const lvar_lambda* seq, double* out) {
  return guarded([&] {
    require(f, "function");
    require(seq, "lambda");
    require(out, "out");
    *out = lambda_norm(f->fn, seq->seq);
  });
}

lvar_status lvar_wiener_profile(const lvar_function* f, const lvar_lambda* seq,
                                const double* deltas, size_t count, size_t resolution,
                                char** out_json) {
  return guarded([&] {
    require(f, "function");
    require(seq, "lambda");
    require(out_json, "out");
    if (count > 0) require(deltas, "deltas");
    const auto profile =
        wiener_profile(f->fn, seq->seq, std::span<const double>(deltas, count), resolution);
    Json rows = Json::array();
    bool decreasing = true;
    for (size_t i = 0; i < profile.size(); ++i) {
      if (i > 0 && !(profile[i].result.value < profile[i - 1].result.value)) decreasing = false;
      Json row{{"delta", profile[i].delta}};
      const Json vr = variation_to_json(profile[i].result);
      for (auto it = vr.begin(); it != vr.end(); ++it) row[it.key()] = it.value();
      rows.push_back(std::move(row));
    }
    *out_json = dup_string(dump_json(Json{{"lambda", lambda_to_json(seq->seq)},
                                          {"resolution", resolution},
                                          {"strictly_decreasing", decreasing},
                                          {"profile", std::move(rows)}}));
  });
}

// ---- campaigns

void lvar_diminish_config_default(lvar_diminish_config* cfg) {
  if (cfg == nullptr) return;
  const DiminishConfig d;
  cfg->seed = d.seed;
  cfg->cases = d.cases;
  cfg->max_breakpoints = d.max_breakpoints;
  cfg->value_lo = d.value_lo;
  cfg->value_hi = d.value_hi;
  cfg->n_min = d.n_min;
  cfg->n_max = d.n_max;
  cfg->use_bernstein = 1;
  cfg->use_kantorovich = 1;
  cfg->lambdas = "constant,linear,power";
  cfg->tolerance = d.tolerance;
  cfg->threads = 0;
}

lvar_status lvar_run_diminish(const lvar_diminish_config* cfg, lvar_report** out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "out");
    DiminishConfig d;
    d.seed = cfg->seed;
    d.cases = cfg->cases;
    d.max_breakpoints = cfg->max_breakpoints;
    d.value_lo = cfg->value_lo;
    d.value_hi = cfg->value_hi;
    d.n_min = cfg->n_min;
    d.n_max = cfg->n_max;
    d.ops.clear();
    if (cfg->use_bernstein) d.ops.push_back(OperatorKind::Bernstein);
    if (cfg->use_kantorovich) d.ops.push_back(OperatorKind::Kantorovich);
    d.lambdas = parse_families(cfg->lambdas);
    d.tolerance = cfg->tolerance;
    d.threads = cfg->threads;
    *out = new lvar_report{run_diminish_campaign(d)};
  });
}

lvar_status lvar_run_counterexample(const lvar_lambda* seq, double delta, size_t n_max,
                                    size_t resolution, lvar_report** out) {
  return guarded([&] {
    require(seq, "lambda");
    require(out, "out");
    *out = new lvar_report{run_counterexample(seq->seq, {delta, n_max, resolution})};
  });
}

lvar_status lvar_run_convergence(const lvar_function* f, const lvar_lambda* seq,
                                 const size_t* schedule, size_t count, lvar_report** out) {
  return guarded([&] {
    require(f, "function");
    require(seq, "lambda");
    require(out, "out");
    if (count > 0) require(schedule, "schedule");
    const auto* g = std::get_if<PiecewiseLinear>(&f->fn);
    if (g == nullptr) throw InvalidInput("type: convergence study needs a plf function");
    ConvergenceConfig cfg;
    cfg.schedule.assign(schedule, schedule + count);
    *out = new lvar_report{run_convergence_study(*g, seq->seq, cfg)};
  });
}

lvar_status lvar_run_oracle_check(uint64_t seed, size_t cases, size_t threads, lvar_report** out) {
  return guarded([&] {
    require(out, "out");
    OracleConfig cfg;
    cfg.seed = seed;
    cfg.cases = cases;
    cfg.threads = threads;
    *out = new lvar_report{run_oracle_crosscheck(cfg)};
  });
}

lvar_status lvar_run_continuity(lvar_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = new lvar_report{run_continuity_campaign()};
  });
}

int lvar_report_ok(const lvar_report* r) { return r != nullptr && r->report.ok() ? 1 : 0; }

size_t lvar_report_violation_count(const lvar_report* r) {
  return r == nullptr ? 0 : r->report.violations.size();
}

lvar_status lvar_report_json(const lvar_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(dump_json(r->report.to_json()));
  });
}

lvar_status lvar_report_csv(const lvar_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = dup_string(r->report.to_csv());
  });
}

lvar_status lvar_report_table_csv(const lvar_report* r, char** out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    if (r->report.campaign != "converge") {
      throw InvalidInput("report: table output needs a convergence report");
    }
    *out = dup_string(convergence_table_csv(r->report));
  });
}

void lvar_report_free(lvar_report* r) { delete r; }

}  // extern "C"
