#include "fptime/exact_exp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fptime/errors.hpp"
#include "fptime/quadrature.hpp"
#include "fptime/special_fns.hpp"

namespace fptime {

namespace {

constexpr double kPoissonTail = 1e-12;

void require_positive_level(const FirstPassageQuery& q) {
  if (!(q.u > 0.0)) throw DomainError("level u must be > 0");
}

void require_positive_drift(const ExpModel& m) {
  if (!(m.c > 0.0)) throw DomainError("drift c must be > 0 for the exact formulas");
}

// e^{-z} I_0(z) and e^{-z} I_2(z).
struct ScaledI02 {
  double i0, i2;
};

ScaledI02 scaled_i02(double z) {
  if (z <= detail::kBesselSeriesLimit) {
    return {std::exp(detail::log_bessel_i_scaled_series(0, z)),
            std::exp(detail::log_bessel_i_scaled_series(2, z))};
  }
  const double i0 = std::exp(detail::log_bessel_i_scaled_large(0, z));
  const double i1 = std::exp(detail::log_bessel_i_scaled_large(1, z));
  return {i0, i0 - 2.0 * i1 / z};
}

// Breakpoints for integrands of the form
//   exp(-(sqrt(a s) - sqrt(b (level + c s)))^2) * (bounded),
// which peak where a s = b (level + c s).
quad::Breaks balance_breaks(double t_end, double a, double b, double c, double level) {
  quad::Breaks br(0.0, t_end);
  br.ladder(1.0 / (a + b * c));
  const double slope = a - b * c;
  if (slope > 0.0) {
    const double center = b * level / slope;
    const double sigma = std::sqrt(2.0 * a * center) / slope;
    br.peak(center, sigma, 6);
  }
  return br;
}

}  // namespace

ExpModel::ExpModel(double lam_t_, double lam_y_, double c_) : lam_t(lam_t_), lam_y(lam_y_), c(c_) {
  if (!(lam_t > 0.0) || !std::isfinite(lam_t)) throw DomainError("lam_t must be finite and > 0");
  if (!(lam_y > 0.0) || !std::isfinite(lam_y)) throw DomainError("lam_y must be finite and > 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("c must be finite and >= 0");
}

FirstPassageQuery::FirstPassageQuery(double u_, double t_) : u(u_), t(t_) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("level u must be finite and >= 0");
  if (!(t >= 0.0)) throw DomainError("horizon t must be >= 0");
}

namespace detail {

int poisson_cutoff(double mean, double tail, int max_terms) {
  if (mean <= 0.0) return 0;
  const double log_mean = std::log(mean);
  for (int n = 0; n <= max_terms; ++n) {
    if (n + 2 > mean) {
      // P{N > n} <= pmf(n+1) / (1 - mean/(n+2))
      const double log_next = -mean + (n + 1) * log_mean - std::lgamma(n + 2.0);
      const double bound = std::exp(log_next) / (1.0 - mean / (n + 2.0));
      if (bound < tail) return n;
    }
  }
  throw TruncationError("Poisson(" + std::to_string(mean) + ") tail needs more than " +
                        std::to_string(max_terms) + " terms");
}

}  // namespace detail

double ruin_prob(const ExpModel& m, double u) {
  if (!(u >= 0.0)) throw DomainError("level u must be >= 0");
  if (m.c <= m.critical_rate()) return 1.0;
  const double rho = m.load_ratio();
  return rho * std::exp(-u * m.lam_y * (1.0 - rho));
}

double type1_cdf(const ExpModel& m, const FirstPassageQuery& q) {
  require_positive_level(q);
  require_positive_drift(m);
  if (q.t == 0.0) return 0.0;
  if (std::isinf(q.t)) return ruin_prob(m, q.u);
  const double lt = m.lam_t, ly = m.lam_y, c = m.c, u = q.u;
  const double log_lt = std::log(lt);
  auto integrand = [=](double x) {
    const double z = 2.0 * std::sqrt(lt * ly * x * (c * x + u));
    // -(u ly) - (ly c + lt) x + z <= 0 by the AM-GM inequality.
    const double log_scale = log_lt - u * ly - (ly * c + lt) * x + z;
    const ScaledI02 b = scaled_i02(z);
    return std::exp(log_scale) * (b.i0 - (c * x / (c * x + u)) * b.i2);
  };
  quad::Options opts;
  opts.abs_tol = 1e-10;
  const double p = quad::integrate(integrand, balance_breaks(q.t, lt, ly, c, u), opts);
  return std::clamp(p, 0.0, 1.0);
}

double type2_cdf(const ExpModel& m, const FirstPassageQuery& q) {
  require_positive_level(q);
  require_positive_drift(m);
  if (q.t == 0.0) return 0.0;
  if (std::isinf(q.t)) return ruin_prob(m, q.u);
  // Substitution y = x lam_t / (c lam_y): the integrand becomes a Poisson
  // mixture of the hitting densities h_{n+1}(y | p) of a random walk.
  const double mean = q.u * m.lam_y;
  const int n_max = detail::poisson_cutoff(mean, kPoissonTail);
  std::vector<double> log_w(n_max + 1);
  for (int n = 0; n <= n_max; ++n) log_w[n] = -mean + n * std::log(mean) - std::lgamma(n + 1.0);

  const double p = m.lam_t / (m.c * m.lam_y + m.lam_t);
  const double qq = 1.0 - p;
  const double log_pq = std::log(m.lam_t / (m.c * m.lam_y));
  const double root_qp = std::sqrt(m.c * m.lam_y / m.lam_t);
  auto integrand = [&](double y) {
    const double z = 2.0 * y * root_qp;
    const std::vector<double> log_i = log_bessel_i_scaled_sequence(n_max + 1, z);
    const double common = -std::log(y) - y / p + z;
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      const int k = n + 1;
      sum += std::exp(log_w[n] + 0.5 * k * log_pq + std::log(static_cast<double>(k)) + common + log_i[k]);
    }
    return sum;
  };

  const double y_end = q.t * m.lam_t;
  quad::Breaks br(0.0, y_end);
  br.ladder(p);
  if (p > qq) {
    // The walk drifts right at speed (p - q) / p; level ~ mean + 1.
    const double speed = (p - qq) / p;
    const double center = (mean + 1.0) / speed;
    const double sigma = std::sqrt((mean + 1.0) / p) / speed + std::sqrt(mean + 1.0) / speed;
    br.peak(center, sigma, 6);
  }
  quad::Options opts;
  opts.abs_tol = 1e-10;
  return std::clamp(quad::integrate(integrand, br, opts), 0.0, 1.0);
}

double type3_cdf(const ExpModel& m, const FirstPassageQuery& q) {
  require_positive_level(q);
  require_positive_drift(m);
  if (q.t == 0.0) return 0.0;
  const double ruin = ruin_prob(m, q.u);
  if (std::isinf(q.t)) return ruin;
  const double rho = m.load_ratio();
  const double s = std::sqrt(rho);
  const double a = q.u * m.lam_y;
  // The printed exponent t lam_t (c lam_y / lam_t) (...) is t c lam_y (...).
  const double time_rate = q.t * m.lam_t * (m.c * m.lam_y / m.lam_t);
  const double gap2 = (1.0 - s) * (1.0 - s);
  auto f = [=](double x) {
    const double sh = std::sin(0.5 * x);
    // 1 + rho - 2 sqrt(rho) cos x, written without cancellation near x = 0
    const double den = gap2 + 4.0 * s * sh * sh;
    const double expo = a * (s * std::cos(x) - 1.0) - time_rate * den;
    // cos(A) - cos(A + 2x) = 2 sin(A + x) sin(x)
    const double osc = 2.0 * std::sin(a * s * std::sin(x) + x) * std::sin(x);
    return rho / den * std::exp(expo) * osc;
  };
  const int panels = static_cast<int>(std::ceil(a)) * static_cast<int>(std::ceil(std::max(1.0, s)));
  quad::Breaks br(0.0, std::numbers::pi);
  for (int i = 1; i < panels; ++i) br.add(std::numbers::pi * i / panels);
  br.ladder(1.0 / std::sqrt(time_rate));
  quad::Options opts;
  opts.abs_tol = 1e-10;
  const double integral = quad::integrate(f, br, opts);
  return std::clamp(ruin - integral / std::numbers::pi, 0.0, 1.0);
}

double conditional_cdf(const ExpModel& m, const FirstPassageQuery& q, double v) {
  require_positive_level(q);
  if (!(v >= 0.0)) throw DomainError("conditioning time v must be >= 0");
  if (!std::isfinite(q.t)) throw DomainError("conditional_cdf requires a finite horizon");
  if (v >= q.t) return 0.0;
  const double lt = m.lam_t, ly = m.lam_y, c = m.c;
  const double start = q.u + c * v;
  // Summing the Poisson(M) x gamma(n) series in closed form:
  //   sum_{n>=1} P{M(w) = n} f_T^{*n}(s)
  //     = e^{-ly w - lt s} sqrt(ly lt w / s) I_1(2 sqrt(ly lt w s)).
  auto integrand = [=](double s) {
    const double w = start + c * s;
    const double zeta = 2.0 * std::sqrt(ly * lt * w * s);
    const double log_val = std::log(start / w) - ly * w - lt * s + zeta + 0.5 * std::log(ly * lt * w / s) +
                           log_bessel_i_scaled(1, zeta);
    return std::exp(log_val);
  };
  quad::Options opts;
  opts.abs_tol = 1e-10;
  return std::clamp(quad::integrate(integrand, balance_breaks(q.t - v, lt, ly, c, start), opts), 0.0, 1.0);
}

}  // namespace fptime
