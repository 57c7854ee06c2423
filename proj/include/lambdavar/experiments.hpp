#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lambdavar/json_io.hpp"
#include "lambdavar/operators.hpp"

namespace lambdavar {

// ---------------------------------------------------------------- randomness

/// SplitMix64 mix of (campaign seed, case index); per-case streams are
/// independent of execution order.
std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index);

/// mt19937_64 with a portable uniform-double conversion.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform(double lo, double hi);
  std::size_t uniform_index(std::size_t lo, std::size_t hi);  // inclusive

 private:
  std::mt19937_64 engine_;
};

enum class Shape { Free, Nondecreasing, Nonincreasing };

/// x: 0, 1 and sorted uniform draws; y: uniform in [lo, hi], sorted for the
/// monotone shapes. breakpoint_count in [2, 9].
PiecewiseLinear random_plf(std::uint64_t seed, std::size_t breakpoint_count, double lo, double hi,
                           Shape shape = Shape::Free);

// ---------------------------------------------------------------- reports

struct CaseRecord {
  std::size_t id = 0;
  Json inputs;  // enough to replay the case alone
  Json values;
  /// NaN when the record carries no margin.
  double margin = std::numeric_limits<double>::quiet_NaN();
  bool violation = false;
  std::optional<std::string> error;
  double primary = std::numeric_limits<double>::quiet_NaN();
  double secondary = std::numeric_limits<double>::quiet_NaN();
  double runtime_ms = 0.0;
};

struct CheckRecord {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  std::string campaign;
  Json config;
  double tolerance = 0.0;
  std::vector<CaseRecord> cases;
  std::vector<CheckRecord> checks;
  /// Ids of violating cases.
  std::vector<std::size_t> violations;
  bool record_timings = false;

  bool ok() const;
  std::size_t error_count() const;
  double min_margin() const;
  double max_runtime_ms() const;

  Json to_json() const;
  /// case_id,inputs_digest,primary,secondary,margin,violation
  std::string to_csv() const;
};

// ---------------------------------------------------------------- campaigns

struct NamedLambda {
  std::string name;
  LambdaSequence seq;
};

/// constant(1), linear(1,0), power(0.5)
std::vector<NamedLambda> default_lambda_families();
/// default families plus nlog
std::vector<NamedLambda> all_lambda_families();

struct DiminishMargin {
  double v_f = 0.0;
  double v_op = 0.0;
  double margin = 0.0;
};

/// V_Lambda(f) - V_Lambda(op_n f)
DiminishMargin diminish_margin(const PiecewiseLinear& f, const LambdaSequence& seq,
                               std::size_t n, OperatorKind op);

struct DiminishConfig {
  std::uint64_t seed = 42;
  std::size_t cases = 500;
  std::size_t max_breakpoints = 8;
  double value_lo = -1.0;
  double value_hi = 1.0;
  std::vector<NamedLambda> lambdas = default_lambda_families();
  std::size_t n_min = 1;
  std::size_t n_max = 12;
  std::vector<OperatorKind> ops{OperatorKind::Bernstein, OperatorKind::Kantorovich};
  double tolerance = 1e-9;
  std::size_t threads = 0;  // 0: hardware concurrency
  bool record_timings = false;
};

ExperimentReport run_diminish_campaign(const DiminishConfig& config);

struct CounterexampleConfig {
  double delta = 0.75;
  std::size_t n_max = 10;
  std::size_t resolution = 8;
};

ExperimentReport run_counterexample(const LambdaSequence& seq, const CounterexampleConfig& config);

struct ConvergenceConfig {
  std::vector<std::size_t> schedule{4, 16, 64, 256};
  /// Trend criterion: last entry < first entry * ratio.
  double halving_ratio = 0.5;
};

ExperimentReport run_convergence_study(const PiecewiseLinear& f, const LambdaSequence& seq,
                                       const ConvergenceConfig& config);
/// One row per schedule entry: n,d_bernstein,d_kantorovich,norm_gap_bernstein,status
std::string convergence_table_csv(const ExperimentReport& report);

struct OracleConfig {
  std::uint64_t seed = 7;
  std::size_t cases = 200;
  std::size_t max_breakpoints = 9;
  std::vector<NamedLambda> lambdas = all_lambda_families();
  double tolerance = 1e-9;
  std::size_t threads = 0;
};

ExperimentReport run_oracle_crosscheck(const OracleConfig& config);

ExperimentReport check_continuity_set(const StepFunction& f, const LambdaSequence& seq);

/// Single jump, constant, and two-jump staircase cases.
ExperimentReport run_continuity_campaign();

}  // namespace lambdavar
