#include "doctest.h"

#include <lambdavar.h>

#include <cstring>
#include <string>
#include <vector>

namespace {

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  lvar_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("lambda handles") {
  lvar_lambda* l = nullptr;
  REQUIRE(lvar_lambda_from_json(R"({"family":"linear","params":{"a":1,"b":0}})", &l) == LVAR_OK);
  double v = 0.0;
  CHECK(lvar_lambda_term(l, 5, &v) == LVAR_OK);
  CHECK(v == 5.0);
  CHECK(lvar_lambda_term(l, 0, &v) == LVAR_DOMAIN);
  CHECK(std::string(lvar_last_error()).size() > 0);
  lvar_lambda* t = nullptr;
  REQUIRE(lvar_lambda_tail(l, 3, &t) == LVAR_OK);
  CHECK(lvar_lambda_term(t, 1, &v) == LVAR_OK);
  CHECK(v == 4.0);
  CHECK(std::string(lvar_last_error()).empty());
  CHECK(lvar_shao_sablin_ratio(l, 1, &v) == LVAR_OK);
  CHECK(v == 1.5);
  const size_t pts[] = {10, 100};
  char* js = nullptr;
  CHECK(lvar_shao_sablin_profile(l, pts, 2, &js) == LVAR_OK);
  CHECK(take(js).find("\"ratio\"") != std::string::npos);
  CHECK(lvar_lambda_to_json(t, &js) == LVAR_OK);
  CHECK(take(js).find("\"shift\": 3") != std::string::npos);
  lvar_lambda_free(t);
  lvar_lambda_free(l);
  CHECK(lvar_lambda_from_json(R"({"family":"power"})", &l) == LVAR_INVALID_INPUT);
  CHECK(std::string(lvar_last_error()).find("params.p") != std::string::npos);
  CHECK(lvar_lambda_term(nullptr, 1, &v) == LVAR_INVALID_INPUT);
}

TEST_CASE("function handles and variation") {
  lvar_function* f = nullptr;
  REQUIRE(lvar_function_named("hat", &f) == LVAR_OK);
  lvar_lambda* one = nullptr;
  REQUIRE(lvar_lambda_from_json(R"({"family":"constant","params":{"c":1}})", &one) == LVAR_OK);
  double v = 0.0;
  CHECK(lvar_variation_value(f, one, &v) == LVAR_OK);
  CHECK(v == 2.0);
  CHECK(lvar_function_eval(f, 0.25, &v) == LVAR_OK);
  CHECK(v == 0.5);
  CHECK(lvar_function_eval(f, 2.0, &v) == LVAR_DOMAIN);
  char* js = nullptr;
  CHECK(lvar_variation(f, one, nullptr, &js) == LVAR_OK);
  const std::string out = take(js);
  CHECK(out.find("\"value\": 2.0") != std::string::npos);
  CHECK(out.find("\"method\": \"exact\"") != std::string::npos);
  lvar_variation_options o;
  lvar_variation_options_default(&o);
  o.delta = 0.25;
  CHECK(lvar_variation(f, one, &o, &js) == LVAR_OK);
  CHECK(take(js).find("grid_upper_bound") != std::string::npos);
  CHECK(lvar_norm(f, one, &v) == LVAR_OK);
  CHECK(v == 2.0);
  const double ds[] = {0.5, 0.25};
  CHECK(lvar_wiener_profile(f, one, ds, 2, 8, &js) == LVAR_OK);
  CHECK(take(js).find("\"profile\"") != std::string::npos);
  lvar_lambda_free(one);
  lvar_function_free(f);

  CHECK(lvar_function_from_json(R"({"type":"plf","points":[[0,0],[0.6,1],[0.4,0],[1,1]]})", &f) ==
        LVAR_INVALID_INPUT);
  CHECK(std::string(lvar_last_error()).find("points") != std::string::npos);
  CHECK(lvar_function_named("nope", &f) == LVAR_INVALID_INPUT);
}

TEST_CASE("operators through the C API") {
  lvar_function* f = nullptr;
  REQUIRE(lvar_function_named("identity", &f) == LVAR_OK);
  lvar_function* b = nullptr;
  REQUIRE(lvar_apply_operator(f, LVAR_KANTOROVICH, 1, &b) == LVAR_OK);
  size_t count = 0;
  CHECK(lvar_bernstein_coefficients(b, nullptr, 0, &count) == LVAR_OK);
  CHECK(count == 2);
  std::vector<double> c(count);
  CHECK(lvar_bernstein_coefficients(b, c.data(), c.size(), &count) == LVAR_OK);
  CHECK(c[0] == doctest::Approx(0.25));
  CHECK(c[1] == doctest::Approx(0.75));
  lvar_monotonicity m;
  CHECK(lvar_monotone_certificate(b, &m) == LVAR_OK);
  CHECK(m == LVAR_INCREASING);
  CHECK(lvar_bernstein_coefficients(f, nullptr, 0, &count) == LVAR_INVALID_INPUT);
  lvar_function* z = nullptr;
  CHECK(lvar_apply_operator(f, LVAR_BERNSTEIN, 0, &z) == LVAR_DOMAIN);
  CHECK(lvar_apply_operator(b, LVAR_KANTOROVICH, 3, &z) == LVAR_INVALID_INPUT);
  lvar_function_free(b);
  lvar_function_free(f);
}

TEST_CASE("campaign reports") {
  lvar_diminish_config cfg;
  lvar_diminish_config_default(&cfg);
  CHECK(cfg.seed == 42);
  CHECK(cfg.cases == 500);
  cfg.cases = 10;
  cfg.n_max = 3;
  lvar_report* r = nullptr;
  REQUIRE(lvar_run_diminish(&cfg, &r) == LVAR_OK);
  CHECK(lvar_report_ok(r) == 1);
  CHECK(lvar_report_violation_count(r) == 0);
  char* s = nullptr;
  CHECK(lvar_report_csv(r, &s) == LVAR_OK);
  CHECK(take(s).rfind("case_id,inputs_digest", 0) == 0);
  CHECK(lvar_report_table_csv(r, &s) == LVAR_INVALID_INPUT);
  lvar_report_free(r);
  cfg.lambdas = "constant,zeta";
  CHECK(lvar_run_diminish(&cfg, &r) == LVAR_INVALID_INPUT);

  lvar_lambda* h = nullptr;
  REQUIRE(lvar_lambda_from_json(R"({"family":"linear"})", &h) == LVAR_OK);
  REQUIRE(lvar_run_counterexample(h, 0.75, 10, 8, &r) == LVAR_OK);
  CHECK(lvar_report_json(r, &s) == LVAR_OK);
  CHECK(take(s).find("\"baseline\": 0.8125") != std::string::npos);
  lvar_report_free(r);
  CHECK(lvar_run_counterexample(h, 0.5, 10, 8, &r) == LVAR_DOMAIN);

  lvar_function* f = nullptr;
  REQUIRE(lvar_function_named("abs_mid", &f) == LVAR_OK);
  const size_t sched[] = {4, 16};
  REQUIRE(lvar_run_convergence(f, h, sched, 2, &r) == LVAR_OK);
  CHECK(lvar_report_table_csv(r, &s) == LVAR_OK);
  CHECK(take(s).rfind("n,d_bernstein", 0) == 0);
  lvar_report_free(r);
  lvar_function_free(f);
  lvar_lambda_free(h);

  REQUIRE(lvar_run_oracle_check(7, 5, 1, &r) == LVAR_OK);
  CHECK(lvar_report_ok(r) == 1);
  lvar_report_free(r);
  REQUIRE(lvar_run_continuity(&r) == LVAR_OK);
  CHECK(lvar_report_ok(r) == 1);
  lvar_report_free(r);
}

TEST_CASE("number formatting") {
  char buf[32];
  CHECK(lvar_format_number(2.0, buf, sizeof buf) == LVAR_OK);
  CHECK(std::strcmp(buf, "2.0") == 0);
  CHECK(lvar_format_number(0.1, buf, 4) == LVAR_INVALID_INPUT);
  CHECK(std::string(lvar_version()) == "1.0.0");
}
