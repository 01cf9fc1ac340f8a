#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "fptime/classic_approx.hpp"
#include "fptime/errors.hpp"
#include "fptime/exact_exp.hpp"

using namespace fptime;

namespace {

// (m, S^2) of X = Y - cT with independent exponential T and Y, from their
// first two moments.
NormalConstants constants_of_pair(double rate_t, double rate_y, double c) {
  const double et = 1.0 / rate_t, ey = 1.0 / rate_y;
  const double ex = ey - c * et;
  // X E T - T E X = E T * Y - (c E T + E X) T
  const double a = et, b = c * et + ex;
  const double mixed = a * a * ey * ey + b * b * et * et;
  return normal_constants_from_moments(et, ex, mixed);
}

double sup_error(const ExpModel& m, double u, double centre, double s2) {
  const double sd = std::sqrt(s2 * u);
  double worst = 0.0;
  for (double k = -3.0; k <= 3.0; k += 0.25) {
    const double t = centre * u + k * sd;
    if (t <= 0.0) continue;
    const FirstPassageQuery q(u, t);
    const double approx = m.c < m.critical_rate() ? normal_below(m, q) : normal_above(m, q);
    worst = std::max(worst, std::abs(approx - type1_cdf(m, q)));
  }
  return worst;
}

}  // namespace

TEST_CASE("constants below the critical rate") {
  const MomentConstants k = cramer_constants_exp(ExpModel(2, 1, 1));
  const NormalConstants ref = constants_of_pair(2, 1, 1);
  CHECK(k.m_minus == doctest::Approx(1.0));
  CHECK(k.s2_minus == doctest::Approx(4.0));
  CHECK(k.m_minus == doctest::Approx(ref.m));
  CHECK(k.s2_minus == doctest::Approx(ref.s2));
}

TEST_CASE("constants above the critical rate match the tilted pair") {
  const ExpModel m(2, 1, 4);
  const MomentConstants k = cramer_constants_exp(m);
  CHECK(k.big_c == doctest::Approx(0.5));
  CHECK(k.kappa == doctest::Approx(0.5));
  // Tilting by e^{kappa (Y - cT)} turns Exp(1) into Exp(1 - kappa) and Exp(2)
  // into Exp(2 + c kappa).
  const double tilted_y = 1.0 - k.kappa, tilted_t = 2.0 + 4.0 * k.kappa;
  const NormalConstants ref = constants_of_pair(tilted_t, tilted_y, 4.0);
  CHECK(k.m_plus == doctest::Approx(ref.m));
  CHECK(k.s2_plus == doctest::Approx(ref.s2));
  // the adjustment coefficient solves E e^{kappa X} = 1
  const double mgf = (1.0 / (1.0 - k.kappa)) * (2.0 / (2.0 + 4.0 * k.kappa));
  CHECK(mgf == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.big_c == doctest::Approx(m.load_ratio()));
}

TEST_CASE("critical rate and domain") {
  CHECK_THROWS_AS(cramer_constants_exp(ExpModel(2, 1, 2)), CriticalRateError);
  CHECK_THROWS_AS(normal_below(ExpModel(2, 1, 2), {10, 10}), CriticalRateError);
  CHECK_THROWS_AS(normal_below(ExpModel(2, 1, 3), {10, 10}), CriticalRateError);
  CHECK_THROWS_AS(normal_above(ExpModel(2, 1, 1), {10, 10}), CriticalRateError);
  CHECK_THROWS_AS(cramer_constants_exp(ExpModel(2, 1, 0)), DomainError);
  CHECK_THROWS_AS(normal_constants_from_moments(1, -1, 1), DomainError);
  CHECK_THROWS_AS(DiffusionParams(1, 0), DomainError);
}

TEST_CASE("normal approximations: median and limits") {
  const ExpModel below(2, 1, 1);
  const MomentConstants kb = cramer_constants_exp(below);
  CHECK(normal_below(below, {25, kb.m_minus * 25}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(normal_below(below, {25, kInfiniteHorizon}) == 1.0);
  const ExpModel above(2, 1, 4);
  const MomentConstants ka = cramer_constants_exp(above);
  CHECK(normal_above(above, {25, ka.m_plus * 25}) == doctest::Approx(0.5 * ruin_prob(above, 25)).epsilon(1e-13));
  for (double u : {1.0, 10.0, 60.0}) {
    CHECK(std::abs(normal_above(above, {u, 1e9}) - ruin_prob(above, u)) < 1e-12);
    CHECK(normal_above(above, {u, kInfiniteHorizon}) == doctest::Approx(ruin_prob(above, u)).epsilon(1e-14));
  }
  CHECK(normal_above(ExpModel(2, 1, 40), {500, 1.0}) >= 0.0);
}

TEST_CASE("diffusion crossing probability") {
  const FirstPassageQuery q(30, 100);
  CHECK(diffusion_approx_exp(ExpModel(2, 1, 2), q) == doctest::Approx(0.1336).epsilon(1e-4 / 0.1336));
  CHECK(diffusion_approx_exp(ExpModel(2, 1, 2), q) ==
        doctest::Approx(std::erfc(1.5 / std::sqrt(2.0))).epsilon(1e-14));
  const DiffusionParams d(2, 4);
  CHECK(diffusion_crossing_cdf(d, 1.0, {10, 0}) == 0.0);
  CHECK(diffusion_crossing_cdf(d, 1.0, {10, kInfiniteHorizon}) == 1.0);
  CHECK(diffusion_crossing_cdf(d, 3.0, {10, kInfiniteHorizon}) == doctest::Approx(std::exp(-5.0)));
  CHECK(diffusion_crossing_cdf(d, 3.0, {10, 1e8}) == doctest::Approx(std::exp(-5.0)).epsilon(1e-10));
  double prev = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double v = diffusion_crossing_cdf(d, 2.5, {20, 0.5 * i});
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(std::isfinite(diffusion_crossing_cdf(d, 50.0, {1000, 10})));
}

TEST_CASE("normal approximation error shrinks with the level") {
  // The approximation error is O(u^{-1/2}); doubling u must shrink it by
  // about 1/sqrt 2.
  for (double c : {1.0, 4.0}) {
    const ExpModel m(2, 1, c);
    const MomentConstants k = cramer_constants_exp(m);
    const double centre = c < m.critical_rate() ? k.m_minus : k.m_plus;
    const double s2 = c < m.critical_rate() ? k.s2_minus : k.s2_plus;
    const double e20 = sup_error(m, 20, centre, s2);
    const double e40 = sup_error(m, 40, centre, s2);
    CHECK(e40 <= e20 / std::sqrt(2.0) + 0.01);
  }
}
