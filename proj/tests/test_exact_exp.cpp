#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fptime/errors.hpp"
#include "fptime/exact_exp.hpp"
#include "fptime/ig_approx.hpp"
#include "fptime/quadrature.hpp"

using namespace fptime;

namespace {

using Cdf = double (*)(const ExpModel&, const FirstPassageQuery&);
const Cdf kForms[] = {type1_cdf, type2_cdf, type3_cdf};

struct GridPoint {
  double c, u, t;
};

std::vector<GridPoint> standard_grid() {
  std::vector<GridPoint> g;
  for (double c : {0.5, 1.0, 2.0, 3.0, 4.0})
    for (double u : {5.0, 15.0, 30.0})
      for (double t : {50.0, 200.0}) g.push_back({c, u, t});
  return g;
}

}  // namespace

TEST_CASE("anchor values") {
  CHECK(type1_cdf(ExpModel(2, 1, 2), {10, 200}) == doctest::Approx(0.699).epsilon(0.002 / 0.699));
  CHECK(type1_cdf(ExpModel(2, 1, 2), {30, 100}) == doctest::Approx(0.1348).epsilon(0.001 / 0.1348));
  CHECK(type1_cdf(ExpModel(2, 1, 2), {20, 200}) == doctest::Approx(0.463).epsilon(0.002 / 0.463));
}

TEST_CASE("ruin probability") {
  CHECK(ruin_prob(ExpModel(2, 1, 1), 7.0) == 1.0);
  CHECK(ruin_prob(ExpModel(2, 1, 2), 7.0) == 1.0);
  CHECK(ruin_prob(ExpModel(2, 1, 4), 10.0) == doctest::Approx(0.5 * std::exp(-5.0)).epsilon(1e-12));
  CHECK(ruin_prob(ExpModel(2, 1, 4), 0.0) == doctest::Approx(0.5));
  for (const Cdf f : kForms) CHECK(f(ExpModel(2, 1, 4), {10, kInfiniteHorizon}) == ruin_prob(ExpModel(2, 1, 4), 10));
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(ExpModel(0, 1, 1), DomainError);
  CHECK_THROWS_AS(ExpModel(1, -1, 1), DomainError);
  CHECK_THROWS_AS(ExpModel(1, 1, -1), DomainError);
  CHECK_THROWS_AS(FirstPassageQuery(-1, 1), DomainError);
  CHECK_THROWS_AS(FirstPassageQuery(1, -1), DomainError);
  for (const Cdf f : kForms) {
    CHECK_THROWS_AS(f(ExpModel(2, 1, 0), {10, 10}), DomainError);
    CHECK_THROWS_AS(f(ExpModel(2, 1, 1), {0, 10}), DomainError);
    CHECK(f(ExpModel(2, 1, 1), {10, 0}) == 0.0);
  }
  CHECK_THROWS_AS(conditional_cdf(ExpModel(2, 1, 1), {10, kInfiniteHorizon}, 1.0), DomainError);
  CHECK(conditional_cdf(ExpModel(2, 1, 1), {10, 5}, 5.0) == 0.0);
}

TEST_CASE("three representations agree on the standard grid") {
  double worst = 0.0;
  for (const GridPoint& g : standard_grid()) {
    const ExpModel m(2, 1, g.c);
    const FirstPassageQuery q(g.u, g.t);
    const double a = type1_cdf(m, q), b = type2_cdf(m, q), c = type3_cdf(m, q);
    worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("monotone in t, u and c") {
  for (const Cdf f : kForms) {
    double prev = -1.0;
    for (int i = 0; i < 100; ++i) {
      const double v = f(ExpModel(2, 1, 2), {15, 1.0 + 3.0 * i});
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
    prev = 2.0;
    for (int i = 0; i < 100; ++i) {
      const double v = f(ExpModel(2, 1, 2), {0.5 + 0.5 * i, 100});
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
    prev = 2.0;
    for (int i = 0; i < 100; ++i) {
      const double v = f(ExpModel(2, 1, 0.1 + 0.05 * i), {15, 100});
      CHECK(v <= prev + 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("long horizon reaches the ruin probability") {
  for (double c : {2.5, 3.0, 4.0}) {
    const ExpModel m(2, 1, c);
    CHECK(std::abs(type1_cdf(m, {10, 1e6}) - ruin_prob(m, 10)) < 1e-4);
  }
}

TEST_CASE("decomposition over the first jump epoch") {
  for (double c : {1.0, 2.0, 4.0}) {
    const double u = 10.0, t = 50.0, lt = 2.0, ly = 1.0;
    const ExpModel m(lt, ly, c);
    const FirstPassageQuery q(u, t);
    quad::Breaks br(0.0, t);
    br.ladder(0.05);
    quad::Options opts;
    opts.abs_tol = 1e-8;
    const double later = quad::integrate(
        [&](double v) { return conditional_cdf(m, q, v) * lt * std::exp(-lt * v); }, br, opts);
    const double first = lt * std::exp(-ly * u) * -std::expm1(-(ly * c + lt) * t) / (ly * c + lt);
    CHECK(std::abs(later + first - type1_cdf(m, q)) < 1e-5);
  }
}

TEST_CASE("conditional law is close to the kernel at high levels") {
  const RenewalMoments rm = RenewalMoments::from_exp(2, 1);
  for (double c : {1.0, 2.0, 3.0}) {
    for (double v : {0.0, 2.0, 10.0}) {
      const double u = 50.0;
      for (double t : {30.0, 100.0, 400.0}) {
        if (t <= v) continue;
        const ExpModel m(2, 1, c);
        CHECK(std::abs(conditional_cdf(m, {u, t}, v) - ig_kernel(rm, u, c, t, v)) < 0.05);
      }
    }
  }
}

TEST_CASE("poisson cutoff") {
  CHECK(detail::poisson_cutoff(0.0, 1e-12) == 0);
  const int n = detail::poisson_cutoff(10.0, 1e-12);
  double tail = 0.0;
  for (int k = n + 1; k < n + 200; ++k) tail += std::exp(-10.0 + k * std::log(10.0) - std::lgamma(k + 1.0));
  CHECK(tail < 1e-12);
  CHECK_THROWS_AS(detail::poisson_cutoff(1e6, 1e-12, 1000), TruncationError);
}
