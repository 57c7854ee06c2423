#include "doctest.h"

#include <cmath>
#include <set>

#include "lambdavar/error.hpp"
#include "lambdavar/experiments.hpp"

using namespace lambdavar;

TEST_CASE("random plf") {
  const auto a = random_plf(123, 6, -1.0, 1.0);
  const auto b = random_plf(123, 6, -1.0, 1.0);
  REQUIRE(a.points().size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.points()[i].x == b.points()[i].x);
    CHECK(a.points()[i].y == b.points()[i].y);
    CHECK(a.points()[i].y >= -1.0);
    CHECK(a.points()[i].y <= 1.0);
  }
  CHECK(random_plf(9, 2, 0.0, 1.0).segment_count() == 1);
  const auto m = random_plf(5, 9, -1.0, 1.0, Shape::Nondecreasing);
  for (std::size_t i = 1; i < m.points().size(); ++i) CHECK(m.points()[i].y >= m.points()[i - 1].y);
  CHECK_THROWS_AS(random_plf(1, 1, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(random_plf(1, 10, 0.0, 1.0), DomainError);
}

TEST_CASE("derived seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("rng is portable") {
  Rng r(42);
  const double u = r.uniform(0.0, 1.0);
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
  Rng q(42);
  CHECK(q.uniform(0.0, 1.0) == u);
  for (int i = 0; i < 100; ++i) {
    const auto k = r.uniform_index(2, 5);
    CHECK(k >= 2);
    CHECK(k <= 5);
  }
}

TEST_CASE("diminish margins") {
  const auto m = diminish_margin(PiecewiseLinear::hat(), LambdaSequence::harmonic(), 2,
                                 OperatorKind::Bernstein);
  CHECK(m.v_f == doctest::Approx(1.5));
  CHECK(m.v_op == doctest::Approx(0.75));
  CHECK(m.margin == doctest::Approx(0.75));
  for (auto op : {OperatorKind::Bernstein, OperatorKind::Kantorovich}) {
    CHECK(diminish_margin(PiecewiseLinear::linear(0.0, 0.3), LambdaSequence::harmonic(), 5, op).margin ==
          doctest::Approx(0.0));
  }
}

TEST_CASE("diminish campaign determinism across thread counts") {
  DiminishConfig cfg;
  cfg.cases = 40;
  cfg.n_max = 6;
  cfg.threads = 1;
  const auto serial = run_diminish_campaign(cfg);
  cfg.threads = 4;
  const auto parallel = run_diminish_campaign(cfg);
  CHECK(dump_json(serial.to_json()) == dump_json(parallel.to_json()));
  CHECK(serial.to_csv() == parallel.to_csv());
  CHECK(serial.violations.empty());
  CHECK(serial.error_count() == 0);
  CHECK(serial.ok());
  CHECK(serial.cases.size() == 40);
  CHECK(serial.to_csv().rfind("case_id,inputs_digest,primary,secondary,margin,violation\n", 0) == 0);
}

TEST_CASE("case records replay in isolation") {
  DiminishConfig cfg;
  cfg.cases = 5;
  cfg.n_max = 4;
  const auto report = run_diminish_campaign(cfg);
  for (const auto& c : report.cases) {
    const Function f = function_from_json(c.inputs.at("function"));
    const auto& plf = std::get<PiecewiseLinear>(f);
    const auto& worst = c.values.at("worst");
    LambdaSequence seq = LambdaSequence::constant(1.0);
    for (const auto& l : cfg.lambdas) {
      if (l.name == worst.at("lambda").get<std::string>()) seq = l.seq;
    }
    const auto op = worst.at("op") == "bernstein" ? OperatorKind::Bernstein : OperatorKind::Kantorovich;
    const auto m = diminish_margin(plf, seq, worst.at("n").get<std::size_t>(), op);
    CHECK(m.margin == c.margin);
  }
}

TEST_CASE("timings are opt in") {
  DiminishConfig cfg;
  cfg.cases = 2;
  cfg.n_max = 2;
  CHECK_FALSE(run_diminish_campaign(cfg).to_json().at("summary").contains("max_runtime_ms"));
  cfg.record_timings = true;
  const auto j = run_diminish_campaign(cfg).to_json();
  CHECK(j.at("summary").contains("max_runtime_ms"));
  CHECK(j.at("cases").at(0).contains("runtime_ms"));
}

TEST_CASE("counterexample campaign") {
  const auto r = run_counterexample(LambdaSequence::harmonic(), {});
  CHECK(r.ok());
  CHECK(r.config.at("baseline").get<double>() == 0.8125);
  REQUIRE(r.cases.size() == 10);
  CHECK(std::abs(r.cases[0].values.at("excess").get<double>() - 0.0625) <= 1e-12);
  CHECK(r.cases[0].primary == doctest::Approx(0.875));
  for (const auto& c : r.cases) {
    CHECK(c.values.at("excess").get<double>() > 0.0);
    CHECK(c.secondary > 0.625);
  }
  CHECK_THROWS_AS(run_counterexample(LambdaSequence::constant(1.0), {}), DomainError);
  CHECK_THROWS_AS(run_counterexample(LambdaSequence::harmonic(), {0.6, 10, 8}), DomainError);
  CHECK_THROWS_AS(run_counterexample(LambdaSequence::harmonic(), {1.0, 10, 8}), DomainError);
}

TEST_CASE("convergence study") {
  const auto r = run_convergence_study(PiecewiseLinear::abs_mid(), LambdaSequence::harmonic(), {});
  CHECK(r.ok());
  REQUIRE(r.cases.size() == 4);
  const double d4 = r.cases[0].values.at("d_bernstein").get<double>();
  const double d64 = r.cases[2].values.at("d_bernstein").get<double>();
  CHECK(d64 < d4 / 2.0);
  const auto lin = run_convergence_study(PiecewiseLinear::linear(0.4, -0.1), LambdaSequence::harmonic(), {});
  for (const auto& c : lin.cases) CHECK(c.values.at("d_bernstein").get<double>() <= 1e-12);
  CHECK_THROWS_AS(run_convergence_study(PiecewiseLinear::abs_mid(), LambdaSequence::constant(1.0), {}),
                  DomainError);
  ConvergenceConfig bad;
  bad.schedule = {16, 4};
  CHECK_THROWS_AS(run_convergence_study(PiecewiseLinear::abs_mid(), LambdaSequence::harmonic(), bad),
                  DomainError);
  const std::string csv = convergence_table_csv(r);
  CHECK(csv.rfind("n,d_bernstein,d_kantorovich,norm_gap_bernstein,status\n4,", 0) == 0);
}

TEST_CASE("oracle crosscheck campaign") {
  OracleConfig cfg;
  cfg.cases = 30;
  const auto r = run_oracle_crosscheck(cfg);
  CHECK(r.ok());
  CHECK(r.error_count() == 0);
  for (const auto& c : r.cases) CHECK(c.values.at("critical_points").get<std::size_t>() <= 10);
}

TEST_CASE("continuity set checks") {
  const auto one = check_continuity_set(StepFunction({0.5}, {0.0, 1.0}, {0.5}), LambdaSequence::harmonic());
  CHECK(one.ok());
  CHECK(one.cases[0].primary == doctest::Approx(1.0));
  const auto flat = check_continuity_set(StepFunction({0.5}, {0.25, 0.25}, {0.25}), LambdaSequence::harmonic());
  CHECK(flat.cases[0].primary == 0.0);
  const auto stairs = check_continuity_set(StepFunction({1.0 / 3.0, 2.0 / 3.0}, {0.0, 0.5, 1.0}, {0.25, 0.75}),
                                           LambdaSequence::constant(1.0));
  CHECK(stairs.cases[0].primary == doctest::Approx(1.0));
  CHECK(stairs.cases[0].secondary == doctest::Approx(1.0));
  CHECK(run_continuity_campaign().ok());
}
