#include "fptime/special_fns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fptime/errors.hpp"

namespace fptime {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

// log(e^{-x} I_nu(x)) from the Hankel expansion; nu in {0, 1}, x > 30.
double log_hankel(int nu, double x) {
  const double four_nu2 = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = kInf;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (odd * odd - four_nu2) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag >= prev) break;  // asymptotic series started to diverge
    sum += term;
    if (mag < 1e-17 * std::abs(sum)) break;
    prev = mag;
  }
  return std::log(sum) - 0.5 * std::log(2.0 * std::numbers::pi * x);
}

// I_n(x) / I_{n-1}(x) by the modified Lentz method, n >= 1, x > 0.
double bessel_i_ratio_cf(int n, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  double f = 2.0 * n / x;
  double c = f;
  double d = 0.0;
  for (int j = 1; j < 1000000; ++j) {
    const double b = 2.0 * (n + j) / x;
    d = b + d;
    if (d == 0.0) d = kTiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return 1.0 / f;
}

// Fills log(I_k / I_{k-1}) for k = 1..n_max into out[k].
void log_ratios(int n_max, double x, std::vector<double>& out) {
  double r = bessel_i_ratio_cf(n_max, x);
  out[n_max] = std::log(r);
  for (int k = n_max - 1; k >= 1; --k) {
    r = 1.0 / (2.0 * k / x + r);
    out[k] = std::log(r);
  }
}

void require_order(int n, double x) {
  if (n < 0) throw DomainError("Bessel order must be nonnegative, got " + std::to_string(n));
  if (!(x >= 0.0)) throw DomainError("Bessel argument must be nonnegative");
}

}  // namespace

IGParams::IGParams(double mu_, double lambda_) : mu(mu_), lambda(lambda_) {
  if (!(mu > 0.0)) throw DomainError("inverse Gaussian mu must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("inverse Gaussian lambda must be finite and > 0");
}

DefectiveIGParams::DefectiveIGParams(double mu_hat_, double lambda_) : mu_hat(mu_hat_), lambda(lambda_) {
  if (!(mu_hat > 0.0)) throw DomainError("defective inverse Gaussian mu_hat must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("defective inverse Gaussian lambda must be finite and > 0");
}

double DefectiveIGParams::mass() const { return std::exp(-2.0 * lambda / mu_hat); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double log_std_normal_cdf(double x) {
  if (x < detail::kLogPhiTailSwitch) {
    // Phi(-z) = phi(z) / (z + 1/(z + 2/(z + 3/(z + ...))))
    const double z = -x;
    constexpr double kTiny = 1e-300;
    double f = z;
    double c = f;
    double d = 0.0;
    for (int j = 1; j < 500; ++j) {
      d = z + j * d;
      if (d == 0.0) d = kTiny;
      c = z + j / c;
      if (c == 0.0) c = kTiny;
      d = 1.0 / d;
      const double delta = c * d;
      f *= delta;
      if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return -0.5 * z * z - kLogSqrt2Pi - std::log(f);
  }
  if (x <= 0.0) return std::log(std_normal_cdf(x));
  return std::log1p(-std_normal_cdf(-x));
}

namespace detail {

double log_bessel_i_scaled_series(int n, double x) {
  require_order(n, x);
  if (x == 0.0) return n == 0 ? 0.0 : -kInf;
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 10000; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return n * std::log(0.5 * x) - std::lgamma(n + 1.0) - x + std::log(sum);
}

double log_bessel_i_scaled_large(int n, double x) {
  require_order(n, x);
  if (n <= 1) return log_hankel(n, x);
  std::vector<double> lr(n + 1, 0.0);
  log_ratios(n, x, lr);
  double acc = log_hankel(1, x);
  for (int k = 2; k <= n; ++k) acc += lr[k];
  return acc;
}

}  // namespace detail

double log_bessel_i_scaled(int n, double x) {
  require_order(n, x);
  if (x <= detail::kBesselSeriesLimit) return detail::log_bessel_i_scaled_series(n, x);
  return detail::log_bessel_i_scaled_large(n, x);
}

double bessel_i_scaled(int n, double x) { return std::exp(log_bessel_i_scaled(n, x)); }

std::vector<double> log_bessel_i_scaled_sequence(int n_max, double x) {
  require_order(n_max, x);
  std::vector<double> out(n_max + 1, 0.0);
  if (x == 0.0) {
    std::fill(out.begin() + 1, out.end(), -kInf);
    return out;
  }
  const double log_i0 = x <= detail::kBesselSeriesLimit ? detail::log_bessel_i_scaled_series(0, x)
                                                        : log_hankel(0, x);
  out[0] = log_i0;
  if (n_max == 0) return out;
  log_ratios(n_max, x, out);
  double acc = log_i0;
  for (int k = 1; k <= n_max; ++k) {
    acc += out[k];
    out[k] = acc;
  }
  return out;
}

double ig_cdf(double x, const IGParams& p) {
  if (!(x > 0.0)) throw DomainError("ig_cdf requires x > 0");
  if (std::isinf(x)) return 1.0;
  const double r = std::sqrt(p.lambda / x);
  const double ratio = x / p.mu;  // 0 when mu = inf
  // Past the mean the sum rounds unevenly near 1; the tail keeps it monotone.
  if (ratio > 1.0) return 1.0 - ig_sf(x, p);
  const double first = std_normal_cdf(r * (ratio - 1.0));
  const double second = std::exp(2.0 * p.lambda / p.mu + log_std_normal_cdf(-r * (ratio + 1.0)));
  return std::clamp(first + second, 0.0, 1.0);
}

double log_ig_pdf(double x, const IGParams& p) {
  if (!(x > 0.0)) throw DomainError("ig_pdf requires x > 0");
  const double dev = x / p.mu - 1.0;
  return 0.5 * std::log(p.lambda / (x * x * x)) - kLogSqrt2Pi - p.lambda * dev * dev / (2.0 * x);
}

double ig_pdf(double x, const IGParams& p) { return std::exp(log_ig_pdf(x, p)); }

double defective_ig_cdf(double x, const DefectiveIGParams& p) {
  if (!(x > 0.0)) throw DomainError("defective_ig_cdf requires x > 0");
  const double log_mass = -2.0 * p.lambda / p.mu_hat;
  if (std::isinf(x)) return std::exp(log_mass);
  const double r = std::sqrt(p.lambda / x);
  const double ratio = x / p.mu_hat;
  if (ratio > 1.0) return std::max(0.0, std::exp(log_mass) - defective_ig_sf(x, p));
  // exp(-2l/mu) * [Phi(a) + exp(2l/mu) Phi(b)] = exp(-2l/mu) Phi(a) + Phi(b)
  const double first = std::exp(log_mass + log_std_normal_cdf(r * (ratio - 1.0)));
  const double second = std_normal_cdf(-r * (ratio + 1.0));
  return std::clamp(first + second, 0.0, std::exp(log_mass));
}

namespace {

// exp(la) - exp(lb) for la >= lb, without cancellation in the leading digits.
double exp_diff(double la, double lb) {
  if (la == -kInf) return 0.0;
  return std::max(0.0, -std::exp(la) * std::expm1(lb - la));
}

}  // namespace

double ig_sf(double x, const IGParams& p) {
  if (!(x > 0.0)) throw DomainError("ig_sf requires x > 0");
  if (std::isinf(x)) return 0.0;
  const double r = std::sqrt(p.lambda / x);
  const double ratio = x / p.mu;
  return exp_diff(log_std_normal_cdf(-r * (ratio - 1.0)),
                  2.0 * p.lambda / p.mu + log_std_normal_cdf(-r * (ratio + 1.0)));
}

double defective_ig_sf(double x, const DefectiveIGParams& p) {
  if (!(x > 0.0)) throw DomainError("defective_ig_sf requires x > 0");
  if (std::isinf(x)) return 0.0;
  const double r = std::sqrt(p.lambda / x);
  const double ratio = x / p.mu_hat;
  return exp_diff(-2.0 * p.lambda / p.mu_hat + log_std_normal_cdf(-r * (ratio - 1.0)),
                  log_std_normal_cdf(-r * (ratio + 1.0)));
}

}  // namespace fptime
