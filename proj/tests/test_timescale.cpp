#include <doctest.h>

#include <cmath>
#include <vector>

#include "husts/error.hpp"
#include "husts/timescale.hpp"
#include "oracles.hpp"

using namespace husts;

namespace {

struct Params {
  double alpha, beta, lambda;
};

// The four worked parameter sets, each with a handful of eigenvalues.
const std::vector<Params> kExampleParams = {
    {6, 1, -0.2}, {6, 1, -0.8}, {3, 1, -0.5}, {3, 1, -0.8},
    {0.1, 1, -1.2}, {0.1, 1, -9.2}, {1, 0.5, -2.5}, {1, 0.5, -2.9},
};

}  // namespace

TEST_CASE("step pair validation") {
  CHECK_THROWS_AS(StepPair(0, 1), Error);
  CHECK_THROWS_AS(StepPair(1, -2), Error);
  CHECK_THROWS_AS(StepPair(1, 1), Error);
  CHECK_THROWS_AS(StepPair(NAN, 1), Error);
  CHECK_NOTHROW(StepPair::relaxed(1, 1));
  try {
    StepPair(1, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSteps);
  }
}

TEST_CASE("graininess and forward jump") {
  CHECK(StepPair(6, 1).mu({0, Phase::Even}) == 6);
  CHECK(StepPair(6, 1).mu({3, Phase::Odd}) == 1);
  CHECK(StepPair(0.1, 1).mu({5, Phase::Even}) == 0.1);
  CHECK(sigma({0, Phase::Even}) == GridPoint{0, Phase::Odd});
  CHECK(sigma({2, Phase::Odd}) == GridPoint{3, Phase::Even});
  const StepPair s(6, 1);
  CHECK(s.time({2, Phase::Even}) == 14);
  CHECK(s.time({2, Phase::Odd}) == 20);
  for (std::uint64_t i = 0; i < 50; ++i) CHECK(index_of(point_at(i)) == i);
}

TEST_CASE("exponential reference values") {
  const StepPair s(6, 1);
  for (std::uint64_t k = 0; k < 5; ++k) {
    CHECK(exp_lambda(s, 0.0, {k, Phase::Even}) == 1.0);
    CHECK(exp_lambda(s, 0.0, {k, Phase::Odd}) == 1.0);
  }
  const StepPair t(1, 0.5);
  CHECK(exp_lambda(t, -3, {4, Phase::Even}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(exp_lambda(t, -3, {4, Phase::Odd}) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(exp_lambda(s, -0.2, {1, Phase::Even}) == doctest::Approx(-4.0 / 25).epsilon(1e-14));
  CHECK_THROWS_AS(exp_lambda(s, -1.0 / 6, {1, Phase::Even}), Error);
}

TEST_CASE("exponential matches the forward recursion") {
  // 8 example parameter sets plus 24 more, 64 points each.
  std::vector<Params> grid = kExampleParams;
  for (double a : {0.3, 2.0, 5.0}) {
    for (double lam : {-4.0, -1.7, -0.6, -0.05, 0.4, 1.5, 3.0, 7.0}) grid.push_back({a, 1.0, lam});
  }
  int checked = 0;
  for (const auto& prm : grid) {
    const StepPair s(prm.alpha, prm.beta);
    if (!is_regressive(s, prm.lambda)) continue;
    const auto ref = oracle::exp_by_recursion(prm.alpha, prm.beta, prm.lambda, 65);
    for (std::uint64_t i = 0; i + 1 < ref.size(); ++i) {
      const GridPoint p = point_at(i);
      const double e = exp_lambda(s, prm.lambda, p);
      const double next = exp_lambda(s, prm.lambda, sigma(p));
      CHECK(oracle::rel_close(next, (1 + prm.lambda * s.mu(p)) * e, 1e-12));
      CHECK(oracle::rel_close(e, ref[i], 1e-12));
      ++checked;
    }
  }
  CHECK(checked >= 240);
}

TEST_CASE("delta derivative") {
  const StepPair s(6, 1);
  const auto constant = GridFunction::sample(s, 10, [](GridPoint) { return 4.5; });
  const auto identity = GridFunction::sample(s, 10, [&](GridPoint p) { return s.time(p); });
  const auto e = GridFunction::sample(s, 10, [&](GridPoint p) { return exp_lambda(s, -0.2, p); });
  for (std::uint64_t i = 0; i + 1 < 10; ++i) {
    CHECK(delta_derivative(constant, point_at(i)) == 0.0);
    CHECK(delta_derivative(identity, point_at(i)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(delta_derivative(e, point_at(i)) ==
          doctest::Approx(-0.2 * e.at(point_at(i))).epsilon(1e-12));
  }
  CHECK_THROWS_AS(delta_derivative(constant, point_at(9)), Error);
}

TEST_CASE("closed-form delta sum agrees with direct summation") {
  for (const auto& prm : kExampleParams) {
    const StepPair s(prm.alpha, prm.beta);
    CHECK(delta_sum_abs_exp(s, prm.lambda, {0, Phase::Even}) == 0.0);
    for (std::uint64_t k = 0; k <= 20; ++k) {
      for (Phase ph : {Phase::Even, Phase::Odd}) {
        const double closed = delta_sum_abs_exp(s, prm.lambda, {k, ph});
        const double direct = delta_sum_abs_exp_direct(s, prm.lambda, {k, ph});
        CHECK(oracle::rel_close(closed, direct, 1e-12));
      }
    }
  }
}

TEST_CASE("delta sum limits") {
  CHECK(delta_sum_limit(StepPair(6, 1), -0.2, Phase::Even) ==
        doctest::Approx(25.0 / 21 * (1 + 6 * std::pow(0.4, 2.0 / 7))).epsilon(1e-12));
  CHECK(delta_sum_limit(StepPair(3, 1), -0.5, Phase::Even) ==
        doctest::Approx(4.0 / 3 * (1 + 3 / std::sqrt(2.0))).epsilon(1e-12));
  CHECK(delta_sum_limit(StepPair(0.1, 1), -1.2, Phase::Odd) == doctest::Approx(1.158).epsilon(1e-3));
  CHECK_THROWS_AS(delta_sum_limit(StepPair(1, 0.5), -4, Phase::Even), Error);
}

TEST_CASE("finite sums converge geometrically to the limit") {
  for (const auto& prm : kExampleParams) {
    const StepPair s(prm.alpha, prm.beta);
    const double q = std::abs(growth_product(s, prm.lambda));
    REQUIRE(q < 1.0);
    for (Phase ph : {Phase::Even, Phase::Odd}) {
      const double limit = delta_sum_limit(s, prm.lambda, ph);
      double prev_gap = limit - delta_sum_abs_exp(s, prm.lambda, {1, ph});
      const double scale = prev_gap / q;
      for (std::uint64_t k = 2; k <= 30; ++k) {
        const double gap = limit - delta_sum_abs_exp(s, prm.lambda, {k, ph});
        CHECK(gap >= -1e-12 * limit);
        CHECK(gap <= prev_gap + 1e-12 * limit);
        CHECK(gap <= scale * std::pow(q, double(k)) * (1 + 1e-9) + 1e-12 * limit);
        prev_gap = gap;
      }
    }
  }
}

TEST_CASE("exponential alternates on even points when the product is negative") {
  for (const auto& prm : kExampleParams) {
    const StepPair s(prm.alpha, prm.beta);
    if (growth_product(s, prm.lambda) >= 0) continue;
    for (std::uint64_t k = 0; k < 25; ++k) {
      const double e = exp_lambda(s, prm.lambda, {k, Phase::Even});
      CHECK((e > 0) == (k % 2 == 0));
    }
  }
}

TEST_CASE("grid function access") {
  const GridFunction f(StepPair(2, 1), {1, 2, 3});
  CHECK(f.at({1, Phase::Even}) == 3);
  CHECK(f.contains({1, Phase::Even}));
  CHECK_FALSE(f.contains({1, Phase::Odd}));
  CHECK_THROWS_AS(f.at({1, Phase::Odd}), Error);
  CHECK_THROWS_AS(GridFunction(StepPair(2, 1), {1}), Error);
}
