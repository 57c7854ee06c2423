#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "lambdavar/error.hpp"
#include "lambdavar/functions.hpp"
#include "oracles.hpp"

using namespace lambdavar;

namespace {

std::vector<double> interior(const CriticalSet& cs) {
  return {cs.points.begin() + 1, cs.points.end() - 1};
}

std::vector<double> random_coeffs(std::mt19937_64& rng, std::size_t degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(degree + 1);
  for (double& v : c) v = u(rng);
  return c;
}

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(BernsteinPoly({0.0, 1.0, 0.0})(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(PiecewiseLinear::hat()(0.25) == 0.5);
  const StepFunction s({0.5}, {0.0, 1.0}, {0.3});
  CHECK(s(0.5) == 0.3);
  CHECK(s(0.49) == 0.0);
  CHECK(s(0.51) == 1.0);
  CHECK_THROWS_AS(PiecewiseLinear::hat()(1.5), DomainError);
  CHECK_THROWS_AS(BernsteinPoly({1.0, 2.0})(-0.1), DomainError);
  CHECK_THROWS_AS(s(-0.01), DomainError);
}

TEST_CASE("piecewise linear invariants") {
  CHECK_THROWS_AS(PiecewiseLinear({{0.0, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewiseLinear({{0.1, 0.0}, {1.0, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewiseLinear({{0.0, 0.0}, {0.9, 1.0}}), InvalidInput);
  CHECK_THROWS_AS(PiecewiseLinear({{0.0, 0.0}, {0.5, 1.0}, {0.5, 2.0}, {1.0, 0.0}}), InvalidInput);
  try {
    PiecewiseLinear({{0.0, 0.0}, {0.6, 1.0}, {0.4, 2.0}, {1.0, 0.0}});
    FAIL("expected rejection");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("points[2]") != std::string::npos);
  }
}

TEST_CASE("step function invariants") {
  CHECK_THROWS_AS(StepFunction({0.5}, {0.0, 1.0}, {2.0}), InvalidInput);
  CHECK_THROWS_AS(StepFunction({0.5, 0.4}, {0.0, 1.0, 2.0}, {0.5, 1.5}), InvalidInput);
  CHECK_THROWS_AS(StepFunction({0.0}, {0.0, 1.0}, {0.5}), InvalidInput);
  CHECK_THROWS_AS(StepFunction({0.5}, {0.0}, {0.0}), InvalidInput);
  CHECK_NOTHROW(StepFunction({0.5}, {0.0, 1.0}, {1.0}));
  try {
    StepFunction({0.5}, {0.0, 1.0}, {-1.0});
    FAIL("expected rejection");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("pointValues[0]") != std::string::npos);
  }
}

TEST_CASE("derivative examples") {
  auto d1 = BernsteinPoly({0.0, 1.0}).derivative();
  CHECK(d1.degree() == 0);
  CHECK(d1.coeffs()[0] == 1.0);
  auto d2 = BernsteinPoly({0.0, 1.0, 0.0}).derivative();
  CHECK(d2.coeffs() == std::vector<double>{2.0, -2.0});
  auto d3 = BernsteinPoly({5.0, 5.0, 5.0}).derivative();
  CHECK(d3.coeffs() == std::vector<double>{0.0, 0.0});
  auto d0 = BernsteinPoly({4.0}).derivative();
  CHECK(d0.degree() == 0);
  CHECK(d0.coeffs()[0] == 0.0);
  // restricted domain rescales
  auto r = BernsteinPoly({0.0, 1.0}, 0.0, 0.5).derivative();
  CHECK(r.coeffs()[0] == 2.0);
}

TEST_CASE("degree elevation") {
  CHECK(BernsteinPoly({0.0, 1.0}).elevate(1).coeffs() == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(BernsteinPoly({3.0}).elevate(4).coeffs() == std::vector<double>(5, 3.0));
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const BernsteinPoly p(random_coeffs(rng, 1 + trial % 9));
    const BernsteinPoly q = p.elevate(1 + trial % 5);
    CHECK(q.degree() == p.degree() + 1 + trial % 5);
    for (int i = 0; i < 100; ++i) {
      const double x = i / 99.0;
      CHECK(std::abs(p(x) - q(x)) <= 1e-12);
    }
  }
}

TEST_CASE("de casteljau agrees with basis summation") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_coeffs(rng, static_cast<std::size_t>(trial % 21));
    const BernsteinPoly p(c);
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng);
      CHECK(std::abs(p(x) - oracle::basis_sum(c, x)) <= 1e-12);
    }
    CHECK(p(0.0) == c.front());
    CHECK(p(1.0) == c.back());
  }
}

TEST_CASE("split and restrict preserve values") {
  const BernsteinPoly p({0.3, -1.0, 2.0, 0.5});
  const auto [left, right] = p.split(0.25);
  CHECK(left.hi() == doctest::Approx(0.25));
  for (int i = 0; i <= 20; ++i) {
    const double x = 0.25 * i / 20.0;
    CHECK(std::abs(left(x) - p(x)) <= 1e-12);
    const double y = 0.25 + 0.75 * i / 20.0;
    CHECK(std::abs(right(y) - p(y)) <= 1e-12);
  }
  const BernsteinPoly r = p.restrict_to(0.2, 0.7);
  for (int i = 0; i <= 20; ++i) {
    const double x = 0.2 + 0.5 * i / 20.0;
    CHECK(std::abs(r(x) - p(x)) <= 1e-12);
  }
}

TEST_CASE("isolate extrema examples") {
  CHECK(interior(isolate_extrema(BernsteinPoly({0.0, 1.0, 0.0}))) == std::vector<double>{0.5});
  CHECK(interior(isolate_extrema(BernsteinPoly({0.0, 1.0}))).empty());
  CHECK(interior(isolate_extrema(BernsteinPoly({0.0, 1.0, 0.0, 1.0}))).empty());
  const auto cs = isolate_extrema(BernsteinPoly({0.0, 1.0}));
  CHECK(cs.points.front() == 0.0);
  CHECK(cs.points.back() == 1.0);
}

TEST_CASE("isolate extrema finds known roots") {
  // p'(x) proportional to (x - 0.2)(x - 0.7): extrema at both
  // p(x) = x^3/3 - 0.45 x^2 + 0.14 x in Bernstein form on [0, 1]
  const std::vector<double> c{0.0, 0.14 / 3.0, 0.14 * 2.0 / 3.0 - 0.45 / 3.0,
                              1.0 / 3.0 - 0.45 + 0.14};
  const auto ext = interior(isolate_extrema(BernsteinPoly(c)));
  REQUIRE(ext.size() == 2);
  CHECK(ext[0] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(ext[1] == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("critical point examples") {
  CHECK(critical_points(PiecewiseLinear::hat()).points == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(critical_points(PiecewiseLinear::identity()).points == std::vector<double>{0.0, 1.0});
  CHECK(critical_points(StepFunction({0.5}, {0.0, 1.0}, {0.5})).points ==
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  // flat segments do not introduce points unless the trend changes
  const PiecewiseLinear plateau({{0.0, 0.0}, {0.3, 1.0}, {0.6, 1.0}, {1.0, 2.0}});
  CHECK(critical_points(plateau).points == std::vector<double>{0.0, 0.3, 0.6, 1.0});
  const PiecewiseLinear rising({{0.0, 0.0}, {0.3, 1.0}, {0.6, 1.5}, {1.0, 2.0}});
  CHECK(critical_points(rising).points == std::vector<double>{0.0, 1.0});
}

TEST_CASE("monotone between consecutive critical points") {
  std::mt19937_64 rng(5);
  std::vector<Function> fns;
  for (int t = 0; t < 15; ++t) fns.emplace_back(BernsteinPoly(random_coeffs(rng, 2 + t % 7)));
  fns.emplace_back(PiecewiseLinear::counterexample());
  fns.emplace_back(PiecewiseLinear({{0.0, 0.0}, {0.2, 1.0}, {0.5, -0.3}, {0.8, 0.4}, {1.0, 0.1}}));
  fns.emplace_back(subtract(BernsteinPoly({0.0, 1.0, 0.0, 0.5}), PiecewiseLinear::hat()));
  for (const auto& f : fns) {
    const auto cs = critical_points(f);
    for (std::size_t g = 0; g + 1 < cs.size(); ++g) {
      const double a = cs.points[g], b = cs.points[g + 1];
      int sign = 0;
      bool ok = true;
      double prev = eval(f, a);
      for (int i = 1; i <= 1000; ++i) {
        const double x = i == 1000 ? b : a + (b - a) * i / 1000.0;
        const double y = eval(f, x);
        const double d = y - prev;
        prev = y;
        if (std::abs(d) <= 1e-12) continue;
        const int s = d > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) ok = false;
      }
      CHECK(ok);
    }
  }
}

TEST_CASE("subtract examples") {
  const PiecewiseLinear hat = PiecewiseLinear::hat();
  const auto neg = subtract(BernsteinPoly({0.0, 0.0}), hat);
  CHECK(neg.pieces().size() == 2);
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(std::abs(neg(x) + hat(x)) <= 1e-12);
  }
  const BernsteinPoly p({0.2, -0.4, 0.9, 0.1});
  const auto same = subtract(p, PiecewiseLinear::linear(0.0, 0.0));
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    CHECK(std::abs(same(x) - p(x)) <= 1e-12);
  }
  const auto zero = subtract(BernsteinPoly({0.0, 1.0}).elevate(3), PiecewiseLinear::identity());
  for (int i = 0; i <= 100; ++i) CHECK(std::abs(zero(i / 100.0)) <= 1e-12);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 10; ++t) {
    const BernsteinPoly q(random_coeffs(rng, 5 + t));
    const auto d = subtract(q, PiecewiseLinear::counterexample());
    for (int i = 0; i <= 100; ++i) {
      const double x = i / 100.0;
      CHECK(std::abs(d(x) - (q(x) - PiecewiseLinear::counterexample()(x))) <= 1e-12);
    }
  }
}

TEST_CASE("piecewise polynomial validation") {
  CHECK_THROWS_AS(PiecewisePolynomial({BernsteinPoly({0.0, 1.0}, 0.0, 0.5),
                                       BernsteinPoly({0.0, 1.0}, 0.5, 1.0)}),
                  InvalidInput);
  CHECK_THROWS_AS(PiecewisePolynomial({BernsteinPoly({0.0, 1.0}, 0.0, 0.4),
                                       BernsteinPoly({1.0, 1.0}, 0.5, 1.0)}),
                  InvalidInput);
  CHECK_NOTHROW(PiecewisePolynomial({BernsteinPoly({0.0, 1.0}, 0.0, 0.5),
                                     BernsteinPoly({1.0, 0.0}, 0.5, 1.0)}));
}

TEST_CASE("exact integrals") {
  const auto id = PiecewiseLinear::identity();
  CHECK(integrate(id, 0.0, 1.0) == 0.5);
  CHECK(integrate(id, 0.0, 0.5) == 0.125);
  CHECK(integrate(PiecewiseLinear::hat(), 0.0, 1.0) == 0.5);
  CHECK(integrate(PiecewiseLinear::hat(), 0.25, 0.75) == doctest::Approx(0.375));
  CHECK(integrate(StepFunction({0.5}, {0.0, 1.0}, {0.5}), 0.25, 1.0) == 0.5);
  CHECK_THROWS_AS(integrate(id, 0.6, 0.4), DomainError);
}
