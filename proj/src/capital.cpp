#include "fptime/capital.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

#include "fptime/errors.hpp"

namespace fptime {

namespace {

constexpr int kScanPoints = 64;
constexpr int kMonotoneChecks = 20;
constexpr double kMonotoneSlack = 1e-9;

struct Branch {
  double a, b;
  bool decreasing;
};

double golden_max(const std::function<double(double)>& f, double lo, double hi) {
  // Golden-section search in log u.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::log(lo), b = std::log(hi);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(std::exp(x1)), f2 = f(std::exp(x2));
  for (int i = 0; i < 80 && b - a > 1e-12; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(std::exp(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(std::exp(x1));
    }
  }
  return std::exp(0.5 * (a + b));
}

Branch monotone_branch(const std::function<double(double)>& f, double lo, double hi, Backend backend) {
  if (backend == Backend::exact_exponential) return {lo, hi, true};
  std::array<double, kScanPoints> xs{}, ys{};
  int best = 0;
  for (int i = 0; i < kScanPoints; ++i) {
    xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (kScanPoints - 1));
    ys[i] = f(xs[i]);
    if (ys[i] >= ys[best]) best = i;
  }
  if (best == kScanPoints - 1) return {lo, hi, false};
  if (best == 0) return {lo, hi, true};
  return {golden_max(f, xs[best - 1], xs[best + 1]), hi, true};
}

void check_monotone(const std::function<double(double)>& f, const Branch& br) {
  double prev = f(br.a);
  for (int i = 1; i <= kMonotoneChecks; ++i) {
    const double x = br.a * std::pow(br.b / br.a, static_cast<double>(i) / kMonotoneChecks);
    const double y = f(x);
    const double step = br.decreasing ? prev - y : y - prev;
    if (step < -kMonotoneSlack) {
      throw Error("backend c.d.f. is not monotone in u on [" + std::to_string(br.a) + ", " + std::to_string(br.b) +
                  "]");
    }
    prev = y;
  }
}

double find_root(const std::function<double(double)>& f, double alpha, Branch br, const CapitalOptions& opts) {
  const double sign = br.decreasing ? 1.0 : -1.0;
  // g > 0 left of the root, g < 0 right of it
  auto g = [&](double u) { return sign * (f(u) - alpha); };
  double a = br.a, b = br.b, ga = g(a), gb = g(b);
  if (std::abs(ga) < opts.tolerance) return a;
  if (std::abs(gb) < opts.tolerance) return b;
  bool bisect = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const double width = b - a;
    double x = b - gb * (b - a) / (gb - ga);
    if (bisect || !(x > a && x < b)) x = (a > 0.0 && b > 4.0 * a) ? std::sqrt(a * b) : 0.5 * (a + b);
    const double gx = g(x);
    if (std::abs(gx) < opts.tolerance) return x;
    if (gx > 0.0) {
      a = x;
      ga = gx;
    } else {
      b = x;
      gb = gx;
    }
    bisect = b - a > 0.5 * width;
    if (b - a <= 1e-14 * b) return std::abs(ga) < std::abs(gb) ? a : b;
  }
  throw Error("capital root search did not converge in " + std::to_string(opts.max_iterations) + " iterations");
}

}  // namespace

CapitalQuery::CapitalQuery(double alpha_, double t_, double c_, Backend backend_)
    : alpha(alpha_), t(t_), c(c_), backend(backend_) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (!(t > 0.0)) throw DomainError("horizon t must be > 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("rate c must be finite and >= 0");
}

double backend_cdf(const CapitalQuery& q, const ModelInput& m, double u) {
  if (q.backend == Backend::exact_exponential) return type1_cdf(m.exp_model(q.c), FirstPassageQuery(u, q.t));
  const RenewalMoments rm = m.renewal_moments();
  if (std::isinf(q.t)) return ig_kernel_infty(rm, u, q.c);
  return ig_kernel(rm, u, q.c, q.t, 0.0);
}

double solve_u(const CapitalQuery& q, const ModelInput& m, const CapitalOptions& opts) {
  const std::function<double(double)> f = [&](double u) { return backend_cdf(q, m, u); };
  const double lo = opts.u_min;
  double hi = opts.u_max ? *opts.u_max : (std::isinf(q.t) ? 1e4 : 10.0 * (q.c * q.t + 1.0));
  if (!(lo > 0.0) || !(hi > lo)) throw DomainError("capital bracket must satisfy 0 < u_min < u_max");
  double reach_lo = 0.0, reach_hi = 0.0;
  for (int attempt = 0; attempt < 2; ++attempt, hi *= 10.0) {
    const Branch br = monotone_branch(f, lo, hi, q.backend);
    const double fa = f(br.a), fb = f(br.b);
    reach_lo = std::min(fa, fb);
    reach_hi = std::max(fa, fb);
    if (q.alpha < reach_lo || q.alpha > reach_hi) continue;
    check_monotone(f, br);
    return find_root(f, q.alpha, br, opts);
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "no bracket: alpha = %g outside the attainable range [%g, %g]", q.alpha, reach_lo,
                reach_hi);
  throw NoBracketError(buf);
}

double capital_growth_exponent(const ModelInput& m, Backend backend, double c, double alpha,
                               const std::vector<double>& t_grid) {
  if (t_grid.size() < 4) throw DomainError("growth exponent needs at least 4 horizons");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("horizons must be strictly increasing");
  }
  if (!(t_grid.front() > 0.0) || !std::isfinite(t_grid.back()) || t_grid.back() < 100.0 * t_grid.front()) {
    throw DomainError("horizons must be finite, positive and span at least two decades");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(t_grid.size());
  for (double t : t_grid) {
    const double x = std::log(t);
    const double y = std::log(solve_u(CapitalQuery(alpha, t, c, backend), m));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fptime
