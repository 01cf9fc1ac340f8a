// One line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fptime/capital.hpp"
#include "fptime/exact_exp.hpp"
#include "fptime/ig_approx.hpp"
#include "fptime/mc_oracle.hpp"
#include "fptime/randomwalk.hpp"
#include "fptime/sweep.hpp"

using namespace fptime;

namespace {

constexpr double kAnchorTime = 0.1;     // s, criteria 1 and 2
constexpr double kGridTime = 60.0;      // s, criterion 5
constexpr double kMcTime = 120.0;       // s, criterion 7
constexpr double kFormTol = 1e-6;
constexpr double kKernelFormTol = 1e-8;
constexpr double kMassTol = 1e-8;
constexpr double kResidualTol = 1e-8;
constexpr double kCapitalTol = 0.2;
constexpr double kLimitTol = 1e-10;
constexpr double kDeficitTol = 0.10;

int failures = 0;

void report(int id, bool ok, const char* what, const std::string& measured) {
  std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", id, what, measured.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void anchor(int id, double u, double t, double expected, double tol, bool check_time) {
  double value = 0.0;
  const double secs = timed([&] { value = type1_cdf(ExpModel(2, 1, 2), {u, t}); });
  const bool ok = std::abs(value - expected) <= tol && (!check_time || secs < kAnchorTime);
  report(id, ok, ("exact anchor u=" + std::to_string(static_cast<int>(u)) + " t=" + std::to_string(static_cast<int>(t))).c_str(),
         fmt("P=%.5f (want %.4f +- %.3f), %.1f ms", value, expected, tol, secs * 1e3));
}

void level15_lines() {
  const RenewalMoments rm(1, 6);
  const double a = ig_kernel_infty(rm, 15, 0);
  const double b = kernel_at_critical_rate(rm, 15, kInfiniteHorizon);
  const double c = kernel_at_critical_rate(rm, 15, 100);
  const bool ok = std::abs(a - 0.943) <= 1e-3 && std::abs(b - 0.886) <= 1e-3 && std::abs(c - 0.454) <= 1e-3;
  report(4, ok, "kernel lines at level 15", fmt("%.5f %.5f %.5f (want 0.943 0.886 0.454 +- 0.001)", a, b, c));
}

void formula_equivalence() {
  double worst = 0.0;
  const double secs = timed([&] {
    for (double c : {0.5, 1.0, 2.0, 3.0, 4.0})
      for (double u : {5.0, 15.0, 30.0})
        for (double t : {50.0, 200.0}) {
          const ExpModel m(2, 1, c);
          const FirstPassageQuery q(u, t);
          const double v[4] = {type1_cdf(m, q), type2_cdf(m, q), type3_cdf(m, q), type2_via_walk(m, q)};
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) worst = std::max(worst, std::abs(v[i] - v[j]));
        }
  });
  report(5, worst < kFormTol && secs < kGridTime, "four exact forms on the 30-point grid",
         fmt("max pairwise %.2e, %.1f s", worst, secs));
}

void kernel_forms() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const RenewalMoments rm(0.1 + 3.0 * unit(rng), 0.05 + 10.0 * unit(rng));
    const double u = 0.5 + 150.0 * unit(rng), c = 0.02 + 5.0 * unit(rng);
    const double v = 10.0 * unit(rng), t = v + 1000.0 * unit(rng);
    worst = std::max(worst, std::abs(ig_kernel(rm, u, c, t, v) - ig_kernel_integral_form(rm, u, c, t, v)));
  }
  report(6, worst < kKernelFormTol, "kernel integral form vs closed form", fmt("max |diff| %.2e on 200 points", worst));
}

void monte_carlo() {
  struct Config {
    double c, u, t;
  };
  const std::vector<Config> configs = {{1, 5, 20},  {1, 10, 50},  {1, 20, 100}, {2, 5, 20}, {2, 10, 50},
                                       {2, 20, 100}, {3, 5, 20}, {3, 10, 50}, {3, 20, 100}};
  const LawSpec t_law = LawSpec::exponential(2), y_law = LawSpec::exponential(1);
  const std::uint64_t n = 1000000;
  double worst_z = 0.0;
  std::vector<double> p_hats;
  const double secs = timed([&] {
    for (const Config& k : configs) {
      const EstimateCI e = simulate_first_passage(t_law, McSetup(t_law, y_law, k.c, k.u, k.t, n, 20240));
      const double exact = type1_cdf(ExpModel(2, 1, k.c), {k.u, k.t});
      worst_z = std::max(worst_z, std::abs(e.p_hat - exact) / e.std_err);
      p_hats.push_back(e.p_hat);
    }
  });
  // rerun with a different worker count
  bool identical = true;
  for (std::size_t i = 0; i < configs.size(); i += 4) {
    const Config& k = configs[i];
    const EstimateCI e = simulate_first_passage(t_law, McSetup(t_law, y_law, k.c, k.u, k.t, n, 20240), 3);
    identical = identical && e.p_hat == p_hats[i];
  }
  report(7, worst_z <= 4.0 && secs < kMcTime && identical, "Monte Carlo vs exact, 9 configurations x 1e6 paths",
         fmt("max |z| %.2f, %.1f s on %g workers, reruns identical: ", worst_z, secs, default_workers()) +
             (identical ? "yes" : "no"));
}

void random_walk() {
  double norm = 0.0, mean = 0.0, var = 0.0;
  for (double p : {0.3, 0.5, 0.7})
    for (double y : {1.0, 5.0, 20.0}) {
      const WalkParams w(p);
      const WalkWindow win = walk_window(w, y);
      double s0 = 0.0, s1 = 0.0, s2 = 0.0;
      for (int k = win.lo; k <= win.hi; ++k) {
        const double f = walk_pmf(w, y, k);
        s0 += f;
        s1 += k * f;
        s2 += static_cast<double>(k) * k * f;
      }
      norm = std::max(norm, std::abs(s0 - 1.0));
      mean = std::max(mean, std::abs(s1 - (1.0 - w.q() / p) * y));
      var = std::max(var, std::abs(s2 - s1 * s1 - y / p));
    }
  double mass = 0.0;
  for (double p : {0.2, 0.4, 0.45})
    for (int k : {1, 3, 6}) mass = std::max(mass, std::abs(hitting_cdf(WalkParams(p), k, 5000.0) - std::pow(p / (1 - p), k)));
  const double r1 = std::abs(bessel_identity_residual(WalkParams(0.6), 3, 5.0));
  const double r2 = std::abs(bessel_identity_residual(WalkParams(0.4), 1, 1.0));
  const bool ok = norm < 1e-10 && mean < 1e-8 && var < 1e-6 && mass < kMassTol && r1 < kResidualTol && r2 < kResidualTol;
  report(8, ok, "random walk identities",
         fmt("sum %.1e mean %.1e var %.1e", norm, mean, var) + fmt(" mass %.1e residuals %.1e %.1e", mass, r1, r2));
}

double sup_kernel_error(double u, double c) {
  const RenewalMoments rm = RenewalMoments::from_exp(2, 1);
  const ExpModel m(2, 1, c);
  double worst = 0.0;
  for (int i = 0; i <= 60; ++i) {
    const double t = u / 100.0 * std::pow(1e4, i / 60.0);
    worst = std::max(worst, std::abs(conditional_cdf(m, {u, t}, 0.0) - ig_kernel(rm, u, c, t)));
  }
  return worst;
}

void kernel_decay() {
  const double factor = 1.5 * (std::log(60.0) / 60.0) / (std::log(15.0) / 15.0);
  bool ok = true;
  std::string detail;
  for (double c : {1.0, 3.0}) {
    const double e15 = sup_kernel_error(15, c), e60 = sup_kernel_error(60, c);
    ok = ok && e60 <= factor * e15;
    detail += fmt("c=%g: e15 %.4f e60 %.4f bound %.4f; ", c, e15, e60, factor * e15);
  }
  report(9, ok, "kernel error decay in u", detail);
}

void capital() {
  const ModelInput ex = ModelInput::exponential(2, 1);
  const ModelInput f3 = ModelInput::renewal(RenewalMoments(1, 6));
  struct Case {
    double alpha, t, c;
    Backend b;
    const ModelInput* m;
    double u;
  };
  const Case cases[] = {{0.699, 200, 2, Backend::exact_exponential, &ex, 10},
                        {0.1348, 100, 2, Backend::exact_exponential, &ex, 30},
                        {0.463, 200, 2, Backend::exact_exponential, &ex, 20},
                        {0.943, kInfiniteHorizon, 0, Backend::ig_kernel, &f3, 15},
                        {0.886, kInfiniteHorizon, 1, Backend::ig_kernel, &f3, 15},
                        {0.454, 100, 1, Backend::ig_kernel, &f3, 15}};
  double worst = 0.0;
  for (const Case& k : cases) worst = std::max(worst, std::abs(solve_u({k.alpha, k.t, k.c, k.b}, *k.m) - k.u));
  const std::vector<double> grid = {1e2, 1e3, 1e4, 1e5};
  const double s_ig = capital_growth_exponent(f3, Backend::ig_kernel, 1.0, 0.4, grid);
  const double s_ex = capital_growth_exponent(ex, Backend::exact_exponential, 2.0, 0.5, grid);
  const bool ok = worst <= kCapitalTol && s_ig >= 0.4 && s_ig <= 0.6 && s_ex >= 0.4 && s_ex <= 0.6;
  report(10, ok, "capital inversion and sqrt(t) growth",
         fmt("max |u - anchor| %.3f, slopes ig %.3f exact %.3f", worst, s_ig, s_ex));
}

void teugels() {
  const RenewalMoments rm = RenewalMoments::from_exp(2, 1);
  const double u = 10.0, c = 3.0;
  const double limit = std::abs(teugels_type_cdf(rm, u, c, 1e6) - ig_kernel_infty(rm, u, c));
  const TeugelsConstants k = teugels_constants(rm, c);
  double rel = 0.0;
  for (double g2t : {40.0, 60.0, 80.0, 120.0, 200.0, 400.0}) {
    const double t = g2t / k.g2;
    const double truth = ig_kernel_deficit(rm, u, c, t);
    rel = std::max(rel, std::abs(teugels_deficit(rm, u, c, t) - truth) / truth);
  }
  bool poor = true;
  for (double cc : {1.95, 2.05}) {
    const double exact = type1_cdf(ExpModel(2, 1, cc), {20, 200});
    poor = poor && std::abs(teugels_type_cdf(rm, 20, cc, 200) - exact) > std::abs(ig_kernel(rm, 20, cc, 200) - exact);
  }
  report(11, limit < kLimitTol && rel < kDeficitTol && poor, "Teugels-type form",
         fmt("|A(1e6) - A(inf)| %.1e, max deficit rel. error for g2 t >= 40: %.3f, near c* worse than kernel: ",
             limit, rel) +
             (poor ? "yes" : "no"));
}

}  // namespace

int main() {
  anchor(1, 10, 200, 0.699, 0.002, true);
  anchor(2, 30, 100, 0.1348, 0.001, true);
  anchor(3, 20, 200, 0.463, 0.002, false);
  level15_lines();
  formula_equivalence();
  kernel_forms();
  monte_carlo();
  random_walk();
  kernel_decay();
  capital();
  teugels();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
