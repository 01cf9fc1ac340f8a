#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fptime/errors.hpp"
#include "fptime/laws.hpp"

using namespace fptime;

TEST_CASE("parse and print round trip") {
  for (const char* text : {"exponential(2)", "gamma(2,4)", "pareto(2.5,0.6)", "deterministic(1.5)"}) {
    const LawSpec a = LawSpec::parse(text);
    const LawSpec b = LawSpec::parse(a.to_string());
    CHECK(a.family() == b.family());
    CHECK(a.param(0) == b.param(0));
    CHECK(a.param(1) == b.param(1));
  }
  CHECK(LawSpec::parse(" exp( 3 ) ").param(0) == 3.0);
  CHECK(LawSpec::parse("det(0)").is_point_mass());
  CHECK(LawSpec::parse("gamma(0.5, 1e-2)").param(1) == 0.01);
}

TEST_CASE("parse errors") {
  for (const char* bad : {"", "exponential", "exponential()", "exponential(1,2)", "gamma(1)", "weibull(1,2)",
                          "exponential(-1)", "pareto(0,1)", "exponential(abc)", "exponential(1", "deterministic(-1)",
                          "exponential(inf)"}) {
    CHECK_THROWS_AS(LawSpec::parse(bad), DomainError);
  }
}

TEST_CASE("moments") {
  const LawMoments e = moments_of_law(LawSpec::exponential(2));
  CHECK(e.mean == doctest::Approx(0.5));
  CHECK(e.variance == doctest::Approx(0.25));
  CHECK(*e.third == doctest::Approx(0.75));
  const LawMoments g = moments_of_law(LawSpec::gamma(2, 4));
  CHECK(g.mean == doctest::Approx(0.5));
  CHECK(g.variance == doctest::Approx(0.125));
  CHECK(*g.third == doctest::Approx(24.0 / 64.0));
  const LawMoments d = moments_of_law(LawSpec::deterministic(3));
  CHECK(d.mean == 3.0);
  CHECK(d.variance == 0.0);
  CHECK(*d.third == 27.0);
  const LawMoments p = moments_of_law(LawSpec::pareto(2.5, 0.6));
  CHECK(p.mean == doctest::Approx(1.0));
  CHECK(p.variance == doctest::Approx(2.5 * 0.36 / 0.5 - 1.0));
  CHECK_FALSE(p.third.has_value());
  CHECK(std::isinf(moments_of_law(LawSpec::pareto(1.5, 1)).variance));
  CHECK(std::isinf(moments_of_law(LawSpec::pareto(0.8, 1)).mean));
}

TEST_CASE("survival and density") {
  const LawSpec g = LawSpec::gamma(1, 3);
  for (double x : {0.1, 1.0, 4.0}) CHECK(g.survival(x) == doctest::Approx(std::exp(-3 * x)).epsilon(1e-12));
  // gamma(2, 1): (1 + x) e^{-x}
  const LawSpec g2 = LawSpec::gamma(2, 1);
  for (double x : {0.5, 2.0, 10.0, 40.0}) CHECK(g2.survival(x) == doctest::Approx((1 + x) * std::exp(-x)).epsilon(1e-12));
  CHECK(g2.pdf(2.0) == doctest::Approx(2.0 * std::exp(-2.0)));
  const LawSpec p = LawSpec::pareto(2, 3);
  CHECK(p.survival(2.0) == 1.0);
  CHECK(p.survival(6.0) == doctest::Approx(0.25));
  CHECK(p.pdf(2.0) == 0.0);
  CHECK(p.pdf(6.0) == doctest::Approx(2.0 / 3.0 * std::pow(2.0, -3.0)));
  CHECK(LawSpec::deterministic(2).survival(1.9) == 1.0);
  CHECK(LawSpec::deterministic(2).survival(2.0) == 0.0);
}

TEST_CASE("sample means") {
  PathRng rng(17, 0);
  for (const LawSpec& law : {LawSpec::exponential(2), LawSpec::gamma(3, 2), LawSpec::pareto(4, 1)}) {
    const LawMoments m = moments_of_law(law);
    const int n = 200000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = law.sample(rng);
      CHECK_FALSE(x <= 0.0);
      s += x;
    }
    CHECK(std::abs(s / n - m.mean) < 5.0 * std::sqrt(m.variance / n));
  }
  CHECK(LawSpec::deterministic(0.7).sample(rng) == 0.7);
}

TEST_CASE("path streams are reproducible and distinct") {
  PathRng a(1, 5), b(1, 5), c(1, 6), d(2, 5);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}
