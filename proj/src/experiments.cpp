#include "lambdavar/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "lambdavar/error.hpp"
#include "lambdavar/variation.hpp"

namespace lambdavar {

// ---------------------------------------------------------------- randomness

std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index) {
  std::uint64_t z = campaign_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return lo + static_cast<std::size_t>(engine_() % span);
}

PiecewiseLinear random_plf(std::uint64_t seed, std::size_t breakpoint_count, double lo, double hi,
                           Shape shape) {
  if (breakpoint_count < 2 || breakpoint_count > 9) {
    throw DomainError("breakpoint_count must lie in [2, 9]");
  }
  if (!(lo <= hi)) throw DomainError("value range must satisfy lo <= hi");
  Rng rng(seed);
  std::vector<double> xs{0.0, 1.0};
  while (xs.size() < breakpoint_count) {
    const double x = rng.uniform(0.0, 1.0);
    if (x <= 0.0) continue;
    if (std::any_of(xs.begin(), xs.end(), [x](double v) { return std::abs(v - x) < 1e-9; })) {
      continue;
    }
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> ys(breakpoint_count);
  for (double& y : ys) y = rng.uniform(lo, hi);
  if (shape == Shape::Nondecreasing) std::sort(ys.begin(), ys.end());
  if (shape == Shape::Nonincreasing) std::sort(ys.begin(), ys.end(), std::greater<>());
  std::vector<Point> pts(breakpoint_count);
  for (std::size_t i = 0; i < breakpoint_count; ++i) pts[i] = {xs[i], ys[i]};
  return PiecewiseLinear(std::move(pts));
}

// ---------------------------------------------------------------- reports

bool ExperimentReport::ok() const {
  return violations.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::size_t ExperimentReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.error.has_value(); }));
}

double ExperimentReport::min_margin() const {
  double m = std::numeric_limits<double>::quiet_NaN();
  for (const auto& c : cases) {
    if (std::isnan(c.margin)) continue;
    if (std::isnan(m) || c.margin < m) m = c.margin;
  }
  return m;
}

double ExperimentReport::max_runtime_ms() const {
  double m = 0.0;
  for (const auto& c : cases) m = std::max(m, c.runtime_ms);
  return m;
}

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string csv_number(double v) { return std::isfinite(v) ? format_number(v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

Json ExperimentReport::to_json() const {
  Json summary{{"cases", cases.size()},
               {"violations", violations.size()},
               {"errors", error_count()},
               {"min_margin", number_or_null(min_margin())}};
  if (record_timings) summary["max_runtime_ms"] = max_runtime_ms();
  Json check_list = Json::array();
  for (const auto& c : checks) {
    check_list.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  Json case_list = Json::array();
  for (const auto& c : cases) {
    Json rec{{"id", c.id},
             {"inputs", c.inputs},
             {"values", c.values},
             {"margin", number_or_null(c.margin)},
             {"violation", c.violation}};
    if (c.error) rec["error"] = *c.error;
    if (record_timings) rec["runtime_ms"] = c.runtime_ms;
    case_list.push_back(std::move(rec));
  }
  return Json{{"campaign", campaign},
              {"config", config},
              {"tolerance", tolerance},
              {"ok", ok()},
              {"summary", summary},
              {"checks", check_list},
              {"violations", violations},
              {"cases", case_list}};
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os << "case_id,inputs_digest,primary,secondary,margin,violation\n";
  for (const auto& c : cases) {
    os << c.id << ',' << digest_hex(dump_json(c.inputs, -1)) << ',' << csv_number(c.primary) << ','
       << csv_number(c.secondary) << ',' << csv_number(c.margin) << ',' << (c.violation ? 1 : 0)
       << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- helpers

namespace {

template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

template <class Fn>
void timed(CaseRecord& rec, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  try {
    fn();
  } catch (const Error& e) {
    rec.error = e.what();
  }
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void collect_violations(ExperimentReport& report) {
  report.violations.clear();
  for (const auto& c : report.cases) {
    if (c.violation) report.violations.push_back(c.id);
  }
}

Json lambda_names(const std::vector<NamedLambda>& ls) {
  Json a = Json::array();
  for (const auto& l : ls) a.push_back(Json{{"name", l.name}, {"lambda", lambda_to_json(l.seq)}});
  return a;
}

}  // namespace

std::vector<NamedLambda> default_lambda_families() {
  return {{"constant(1)", LambdaSequence::constant(1.0)},
          {"linear(1,0)", LambdaSequence::linear(1.0, 0.0)},
          {"power(0.5)", LambdaSequence::power(0.5)}};
}

std::vector<NamedLambda> all_lambda_families() {
  auto out = default_lambda_families();
  out.push_back({"nlog", LambdaSequence::nlog()});
  return out;
}

// ---------------------------------------------------------------- diminishing

DiminishMargin diminish_margin(const PiecewiseLinear& f, const LambdaSequence& seq,
                               std::size_t n, OperatorKind op) {
  DiminishMargin m;
  m.v_f = lambda_variation(f, seq).value;
  m.v_op = lambda_variation(apply_operator(op, f, n), seq).value;
  m.margin = m.v_f - m.v_op;
  return m;
}

ExperimentReport run_diminish_campaign(const DiminishConfig& config) {
  if (config.max_breakpoints < 2 || config.max_breakpoints > 9) {
    throw DomainError("max_breakpoints must lie in [2, 9]");
  }
  if (config.n_min == 0 || config.n_min > config.n_max) throw DomainError("invalid n range");
  if (config.lambdas.empty() || config.ops.empty()) {
    throw DomainError("diminish campaign needs at least one lambda family and operator");
  }
  ExperimentReport report;
  report.campaign = "diminish";
  report.tolerance = config.tolerance;
  report.record_timings = config.record_timings;
  Json ops = Json::array();
  for (auto op : config.ops) ops.push_back(std::string(to_string(op)));
  report.config = Json{{"seed", config.seed},
                       {"cases", config.cases},
                       {"max_breakpoints", config.max_breakpoints},
                       {"value_range", Json::array({config.value_lo, config.value_hi})},
                       {"lambdas", lambda_names(config.lambdas)},
                       {"n_range", Json::array({config.n_min, config.n_max})},
                       {"ops", ops},
                       {"tolerance", config.tolerance}};
  report.cases.resize(config.cases);

  parallel_for(config.cases, config.threads, [&](std::size_t i) {
    CaseRecord& rec = report.cases[i];
    rec.id = i;
    const std::uint64_t case_seed = derive_seed(config.seed, i);
    Rng rng(case_seed);
    const std::size_t bp = rng.uniform_index(2, config.max_breakpoints);
    const PiecewiseLinear f =
        random_plf(derive_seed(case_seed, 1), bp, config.value_lo, config.value_hi);
    rec.inputs = Json{{"case_seed", case_seed}, {"function", function_to_json(f)}};
    timed(rec, [&] {
      double worst = std::numeric_limits<double>::infinity();
      Json worst_info;
      std::size_t evaluations = 0;
      for (const auto& lam : config.lambdas) {
        const double v_f = lambda_variation(f, lam.seq).value;
        for (auto op : config.ops) {
          for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
            const double v_op = lambda_variation(apply_operator(op, f, n), lam.seq).value;
            ++evaluations;
            const double margin = v_f - v_op;
            if (margin < worst) {
              worst = margin;
              rec.primary = v_f;
              rec.secondary = v_op;
              worst_info = Json{{"lambda", lam.name}, {"op", std::string(to_string(op))}, {"n", n},
                                {"v_f", v_f}, {"v_op", v_op}};
            }
          }
        }
      }
      rec.margin = worst;
      rec.violation = worst < -config.tolerance;
      rec.values = Json{{"evaluations", evaluations}, {"worst", worst_info}};
    });
  });
  collect_violations(report);
  return report;
}

// ---------------------------------------------------------------- counterexample

ExperimentReport run_counterexample(const LambdaSequence& seq, const CounterexampleConfig& config) {
  const double l1 = seq.term(1);
  const double l2 = seq.term(2);
  if (!(l1 < l2)) throw DomainError("counterexample needs lambda_1 < lambda_2");
  const double delta = config.delta;
  if (!(delta > 2.0 / 3.0 && delta < 1.0)) throw DomainError("counterexample needs 2/3 < delta < 1");
  if (config.n_max == 0) throw DomainError("n_max must be >= 1");

  const PiecewiseLinear f = PiecewiseLinear::counterexample();
  const double f0 = f(0.0);
  const double fd = f(delta);
  const double f1 = f(1.0);
  const double baseline = std::abs(fd - f0) / l1 + std::abs(f1 - fd) / l2;

  ExperimentReport report;
  report.campaign = "counterexample";
  report.tolerance = 0.0;
  report.config = Json{{"lambda", lambda_to_json(seq)},
                       {"delta", delta},
                       {"n_max", config.n_max},
                       {"resolution", config.resolution}};

  const VariationResult solved = restricted_variation(f, seq, delta, config.resolution);
  {
    std::ostringstream os;
    os.precision(17);
    os << "formula " << baseline << ", restricted solver " << solved.value;
    report.checks.push_back({"restricted_solver_matches_formula",
                             std::abs(solved.value - baseline) <= 1e-9, os.str()});
  }

  const IntervalSystem split({{0.0, delta}, {delta, 1.0}});
  for (std::size_t n = 1; n <= config.n_max; ++n) {
    CaseRecord rec;
    rec.id = n - 1;
    rec.inputs = Json{{"n", n}, {"delta", delta}, {"lambda", lambda_to_json(seq)}};
    timed(rec, [&] {
      const BernsteinPoly b = bernstein_of(f, n);
      const double s = sigma(b, split, seq);
      const double bd = b(delta);
      const double excess = s - baseline;
      const double lift = bd - fd;
      rec.primary = s;
      rec.secondary = bd;
      rec.margin = std::min(excess, lift);
      // Both inequalities are strict.
      rec.violation = !(rec.margin > 0.0);
      rec.values = Json{{"baseline", baseline}, {"sigma_bernstein", s}, {"excess", excess},
                        {"bernstein_at_delta", bd}, {"f_at_delta", fd}};
    });
    report.cases.push_back(std::move(rec));
  }
  report.config["baseline"] = baseline;
  collect_violations(report);
  return report;
}

// ---------------------------------------------------------------- convergence

namespace {

CheckRecord halving_check(const std::string& name, const std::vector<double>& col, double ratio) {
  CheckRecord c{name, false, ""};
  std::ostringstream os;
  os.precision(17);
  if (col.size() < 2) {
    c.detail = "fewer than two rows";
    return c;
  }
  const double first = col.front();
  const double last = col.back();
  if (first <= 1e-12) {
    c.pass = std::all_of(col.begin(), col.end(), [](double v) { return v <= 1e-9; });
    os << "already converged at first entry (" << first << ")";
  } else {
    c.pass = last < first * ratio;
    os << "first " << first << ", last " << last << ", ratio threshold " << ratio;
  }
  c.detail = os.str();
  return c;
}

CheckRecord decreasing_check(const std::string& name, const std::vector<double>& col) {
  CheckRecord c{name, true, ""};
  if (!col.empty() && col.front() <= 1e-12) {
    c.pass = std::all_of(col.begin(), col.end(), [](double v) { return v <= 1e-9; });
    c.detail = "identically converged";
    return c;
  }
  for (std::size_t i = 1; i < col.size(); ++i) {
    if (!(col[i] < col[i - 1])) {
      c.pass = false;
      c.detail = "not strictly decreasing at row " + std::to_string(i);
      return c;
    }
  }
  c.detail = "strictly decreasing";
  return c;
}

}  // namespace

ExperimentReport run_convergence_study(const PiecewiseLinear& f, const LambdaSequence& seq,
                                       const ConvergenceConfig& config) {
  if (!seq.proper()) throw DomainError("convergence study needs a proper lambda sequence");
  const auto& sched = config.schedule;
  if (sched.size() < 2) throw DomainError("schedule needs at least two entries");
  for (std::size_t i = 0; i < sched.size(); ++i) {
    if (sched[i] == 0 || (i > 0 && sched[i] <= sched[i - 1])) {
      throw DomainError("schedule must be strictly increasing positive integers");
    }
  }

  ExperimentReport report;
  report.campaign = "converge";
  report.config = Json{{"function", function_to_json(f)},
                       {"lambda", lambda_to_json(seq)},
                       {"schedule", sched},
                       {"halving_ratio", config.halving_ratio}};
  const double norm_f = lambda_norm(f, seq);
  report.config["norm_f"] = norm_f;

  std::vector<double> db, dk, gap;
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const std::size_t n = sched[i];
    CaseRecord rec;
    rec.id = i;
    rec.inputs = Json{{"n", n}};
    timed(rec, [&] {
      const BernsteinPoly b = bernstein_of(f, n);
      const BernsteinPoly k = kantorovich_of(f, n);
      const double d_b = lambda_distance(b, f, seq);
      const double d_k = lambda_distance(k, f, seq);
      const double g = std::abs(lambda_norm(b, seq) - norm_f);
      rec.primary = d_b;
      rec.secondary = d_k;
      rec.values = Json{{"d_bernstein", d_b}, {"d_kantorovich", d_k}, {"norm_gap_bernstein", g}};
      db.push_back(d_b);
      dk.push_back(d_k);
      gap.push_back(g);
    });
    if (rec.error) rec.values = Json{{"skipped", *rec.error}};
    report.cases.push_back(std::move(rec));
  }
  const bool complete = db.size() == sched.size();
  report.checks.push_back({"all_rows_computed", complete, complete ? "" : "some rows skipped"});
  report.checks.push_back(halving_check("d_bernstein_trend", db, config.halving_ratio));
  report.checks.push_back(halving_check("d_kantorovich_trend", dk, config.halving_ratio));
  report.checks.push_back(halving_check("norm_gap_trend", gap, config.halving_ratio));
  report.checks.push_back(decreasing_check("d_bernstein_strictly_decreasing", db));
  report.checks.push_back(decreasing_check("d_kantorovich_strictly_decreasing", dk));
  collect_violations(report);
  return report;
}

std::string convergence_table_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "n,d_bernstein,d_kantorovich,norm_gap_bernstein,status\n";
  for (const auto& c : report.cases) {
    os << c.inputs.at("n").get<std::size_t>() << ',';
    if (c.error) {
      os << ",,," << csv_field("skipped: " + *c.error) << '\n';
      continue;
    }
    os << format_number(c.values.at("d_bernstein").get<double>()) << ','
       << format_number(c.values.at("d_kantorovich").get<double>()) << ','
       << format_number(c.values.at("norm_gap_bernstein").get<double>()) << ",ok\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- oracle crosscheck

ExperimentReport run_oracle_crosscheck(const OracleConfig& config) {
  if (config.max_breakpoints < 2 || config.max_breakpoints > 9) {
    throw DomainError("max_breakpoints must lie in [2, 9]");
  }
  ExperimentReport report;
  report.campaign = "oracle-check";
  report.tolerance = config.tolerance;
  report.config = Json{{"seed", config.seed},
                       {"cases", config.cases},
                       {"max_breakpoints", config.max_breakpoints},
                       {"lambdas", lambda_names(config.lambdas)},
                       {"tolerance", config.tolerance}};
  report.cases.resize(config.cases);
  parallel_for(config.cases, config.threads, [&](std::size_t i) {
    CaseRecord& rec = report.cases[i];
    rec.id = i;
    const std::uint64_t case_seed = derive_seed(config.seed, i);
    Rng rng(case_seed);
    const std::size_t bp = rng.uniform_index(2, config.max_breakpoints);
    const PiecewiseLinear f = random_plf(derive_seed(case_seed, 1), bp, -1.0, 1.0);
    rec.inputs = Json{{"case_seed", case_seed}, {"function", function_to_json(f)}};
    timed(rec, [&] {
      const CriticalSet cs = critical_points(Function(f));
      double worst = 0.0;
      Json per = Json::object();
      for (const auto& lam : config.lambdas) {
        const double exact = lambda_variation(f, lam.seq).value;
        const double oracle = grid_oracle(f, lam.seq, cs.points);
        const double diff = std::abs(exact - oracle);
        per[lam.name] = Json{{"exact", exact}, {"oracle", oracle}};
        if (diff >= worst) {
          worst = diff;
          rec.primary = exact;
          rec.secondary = oracle;
        }
      }
      rec.margin = -worst;
      rec.violation = worst > config.tolerance;
      rec.values = Json{{"critical_points", cs.size()}, {"families", per}};
    });
  });
  collect_violations(report);
  return report;
}

// ---------------------------------------------------------------- continuity points

ExperimentReport check_continuity_set(const StepFunction& f, const LambdaSequence& seq) {
  ExperimentReport report;
  report.campaign = "continuity-set";
  report.tolerance = 1e-9;
  report.config = Json{{"function", function_to_json(f)}, {"lambda", lambda_to_json(seq)}};
  CaseRecord rec;
  rec.inputs = report.config;
  timed(rec, [&] {
    std::vector<double> k{0.0};
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
      const auto [lo, hi] = f.piece_bounds(i);
      k.push_back(0.5 * (lo + hi));
    }
    k.push_back(1.0);
    const double full = lambda_variation(f, seq).value;
    const double restricted = lambda_variation_on_set(f, seq, k).value;
    rec.primary = full;
    rec.secondary = restricted;
    rec.margin = -std::abs(full - restricted);
    rec.violation = rec.margin < -report.tolerance;
    rec.values = Json{{"variation", full}, {"variation_on_continuity_points", restricted}};
  });
  report.cases.push_back(std::move(rec));
  collect_violations(report);
  return report;
}

ExperimentReport run_continuity_campaign() {
  const std::vector<StepFunction> fns{
      StepFunction({0.5}, {0.0, 1.0}, {0.5}),
      StepFunction({0.5}, {0.25, 0.25}, {0.25}),
      StepFunction({1.0 / 3.0, 2.0 / 3.0}, {0.0, 0.5, 1.0}, {0.25, 0.75}),
  };
  ExperimentReport report;
  report.campaign = "continuity-set";
  report.tolerance = 1e-9;
  const auto families = all_lambda_families();
  report.config = Json{{"functions", Json::array()}, {"lambdas", lambda_names(families)}};
  for (const auto& f : fns) report.config["functions"].push_back(function_to_json(f));
  for (const auto& f : fns) {
    for (const auto& lam : families) {
      ExperimentReport one = check_continuity_set(f, lam.seq);
      CaseRecord rec = std::move(one.cases.front());
      rec.id = report.cases.size();
      report.cases.push_back(std::move(rec));
    }
  }
  collect_violations(report);
  return report;
}

}  // namespace lambdavar
