#include "fptime/ig_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fptime/errors.hpp"
#include "fptime/quadrature.hpp"
#include "fptime/special_fns.hpp"

namespace fptime {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_rate(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("the inverse Gaussian kernel requires c > 0");
}

// A_M(w, c | s, 0) with the level already shifted to w = u + c v.
double kernel_at_zero(const RenewalMoments& rm, double w, double c, double s) {
  if (s == 0.0) return 0.0;
  if (std::isinf(s)) return ig_kernel_infty(rm, w, c);
  const double lambda = w / (c * c * rm.d2);
  const double x_end = 1.0 + c * s / w;
  const double d = 1.0 - c * rm.big_m;
  double value;
  if (d >= 0.0) {
    const IGParams p(d > 0.0 ? 1.0 / d : kInf, lambda);
    value = ig_cdf(x_end, p) - ig_cdf(1.0, p);
  } else {
    const DefectiveIGParams p(-1.0 / d, lambda);
    value = defective_ig_cdf(x_end, p) - defective_ig_cdf(1.0, p);
  }
  return std::clamp(value, 0.0, 1.0);
}

void check_kernel_args(double u, double c, double t, double v) {
  require_rate(c);
  if (!(v >= 0.0)) throw DomainError("conditioning time v must be >= 0");
  if (!(t >= v)) throw DomainError("horizon t must be >= v");
  if (!(u + c * v > 0.0) || !std::isfinite(u)) throw DomainError("u + c v must be finite and > 0");
}

}  // namespace

RenewalMoments::RenewalMoments(double big_m_, double d2_) : big_m(big_m_), d2(d2_) {
  if (!(big_m > 0.0) || !std::isfinite(big_m)) throw DomainError("M must be finite and > 0");
  if (!(d2 > 0.0) || !std::isfinite(d2)) throw DomainError("D^2 must be finite and > 0");
}

RenewalMoments RenewalMoments::from_exp(double lam_t, double lam_y) {
  if (!(lam_t > 0.0) || !(lam_y > 0.0)) throw DomainError("rates must be > 0");
  return {lam_y / lam_t, 2.0 * lam_y / (lam_t * lam_t)};
}

RenewalMoments RenewalMoments::from_laws(const LawSpec& t_law, const LawSpec& y_law) {
  const LawMoments mt = moments_of_law(t_law);
  const LawMoments my = moments_of_law(y_law);
  if (!std::isfinite(mt.variance) || !std::isfinite(my.variance)) {
    throw DomainError("M and D^2 need finite variances of T and Y");
  }
  const double d2 = (mt.mean * mt.mean * my.variance + my.mean * my.mean * mt.variance) /
                    (my.mean * my.mean * my.mean);
  return {mt.mean / my.mean, d2};
}

double ig_kernel(const RenewalMoments& rm, double u, double c, double t, double v) {
  check_kernel_args(u, c, t, v);
  return kernel_at_zero(rm, u + c * v, c, t - v);
}

double ig_kernel_integral_form(const RenewalMoments& rm, double u, double c, double t, double v) {
  check_kernel_args(u, c, t, v);
  if (std::isinf(t)) throw DomainError("the integral form needs a finite horizon");
  const double w = u + c * v;
  const double y_end = c * (t - v) / w;
  if (y_end == 0.0) return 0.0;
  const double scale = c * c * rm.d2 / w;
  const double cm = c * rm.big_m;
  auto integrand = [=](double y) {
    const double x = 1.0 + y;
    const double var = scale * x;
    const double dev = y - cm * x;
    return std::exp(-dev * dev / (2.0 * var)) / (x * std::sqrt(2.0 * std::numbers::pi * var));
  };
  quad::Breaks br(0.0, y_end);
  br.ladder(std::min(1.0, scale));
  const double d = 1.0 - cm;
  if (d > 0.0) {
    // mode of the proper law sits near x = mu
    const double mu = 1.0 / d;
    br.peak(mu - 1.0, std::sqrt(scale * mu) / d, 6);
  }
  quad::Options opts;
  opts.abs_tol = 1e-12;
  opts.max_panels = 50000;
  return quad::integrate(integrand, br, opts);
}

double ig_kernel_infty(const RenewalMoments& rm, double u, double c) {
  if (!(u > 0.0)) throw DomainError("level u must be > 0");
  if (!(c >= 0.0)) throw DomainError("rate c must be >= 0");
  const double m = rm.big_m, dd = std::sqrt(rm.d2);
  const double head = m * std::sqrt(u) / dd;
  if (c == 0.0) return std_normal_cdf(head);
  const double d = 1.0 - c * m;
  const double r = std::sqrt(u) / (c * dd);
  double value;
  if (d > 0.0) {
    value = std_normal_cdf(head) - std::exp(2.0 * d * u / (c * c * rm.d2) + log_std_normal_cdf(-(2.0 - c * m) * r));
  } else if (d < 0.0) {
    value = std::exp(2.0 * d * u / (c * c * rm.d2) + log_std_normal_cdf(-(c * m - 2.0) * r)) - std_normal_cdf(-head);
  } else {
    value = 2.0 * std_normal_cdf(head) - 1.0;
  }
  return std::clamp(value, 0.0, 1.0);
}

double ig_kernel_deficit(const RenewalMoments& rm, double u, double c, double t) {
  check_kernel_args(u, c, t, 0.0);
  if (std::isinf(t)) return 0.0;
  const double lambda = u / (c * c * rm.d2);
  const double x_end = 1.0 + c * t / u;
  const double d = 1.0 - c * rm.big_m;
  if (d >= 0.0) return ig_sf(x_end, IGParams(d > 0.0 ? 1.0 / d : kInf, lambda));
  return defective_ig_sf(x_end, DefectiveIGParams(-1.0 / d, lambda));
}

double kernel_at_critical_rate(const RenewalMoments& rm, double u, double t) {
  if (!(u > 0.0)) throw DomainError("level u must be > 0");
  if (!(t >= 0.0)) throw DomainError("horizon t must be >= 0");
  const double cs = rm.critical_rate();
  const double dd = std::sqrt(rm.d2);
  if (std::isinf(t)) return std::clamp(2.0 * std_normal_cdf(rm.big_m * std::sqrt(u) / dd) - 1.0, 0.0, 1.0);
  const double value = 2.0 * (std_normal_cdf(std::sqrt(u) / (cs * dd)) -
                              std_normal_cdf(u / (cs * dd * std::sqrt(cs * t + u))));
  return std::clamp(value, 0.0, 1.0);
}

double unconditional_approx(const RenewalMoments& rm, double u, double c, double t, const LawSpec& t1,
                            const std::optional<LawSpec>& y_law) {
  require_rate(c);
  if (!(u > 0.0)) throw DomainError("level u must be > 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("horizon t must be finite and >= 0");
  auto term = [&](double v) {
    const double early = y_law ? y_law->survival(u + c * v) : 0.0;
    return early + kernel_at_zero(rm, u, c, t - v);
  };
  if (t1.is_point_mass()) {
    const double a = t1.param(0);
    return a <= t ? std::clamp(term(a), 0.0, 1.0) : 0.0;
  }
  const LawMoments mom = moments_of_law(t1);
  quad::Breaks br(0.0, t);
  const double spread = std::isfinite(mom.mean) ? std::min(mom.mean, t) : t;
  br.ladder(spread / 64.0);
  if (t1.family() == LawFamily::pareto) br.add(t1.param(1));
  quad::Options opts;
  opts.abs_tol = 1e-9;
  opts.max_panels = 20000;
  const double value = quad::integrate([&](double v) { return term(v) * t1.pdf(v); }, br, opts);
  return std::clamp(value, 0.0, 1.0);
}

TeugelsConstants teugels_constants(const RenewalMoments& rm, double c) {
  require_rate(c);
  const double d = 1.0 - c * rm.big_m;
  if (d == 0.0) throw CriticalRateError("Teugels-type constants are infinite at c = 1/M");
  TeugelsConstants k{};
  k.b0 = std::sqrt(2.0 / std::numbers::pi) * std::sqrt(rm.d2) / (std::sqrt(c) * d * d);
  k.g1 = d / (c * c * rm.d2);
  k.g2 = d * d / (2.0 * c * rm.d2);
  k.g3 = 1.0 / (2.0 * c * c * c * rm.d2);
  return k;
}

TeugelsConstants teugels_constants_exp(const ExpModel& m) {
  require_rate(m.c);
  const double lt = m.lam_t, ly = m.lam_y, c = m.c;
  const double gap = 1.0 - c * ly / lt;
  if (gap == 0.0) throw CriticalRateError("Teugels-type constants are infinite at c = c*");
  TeugelsConstants k{};
  k.b0 = 2.0 / std::sqrt(std::numbers::pi) * std::sqrt(ly) / (std::sqrt(c) * lt * gap * gap);
  k.g1 = lt * (lt - c * ly) / (2.0 * c * c * ly);
  k.g2 = (lt - c * ly) * (lt - c * ly) / (4.0 * c * ly);
  k.g3 = lt * lt / (4.0 * c * c * c * ly);
  return k;
}

double teugels_deficit(const RenewalMoments& rm, double u, double c, double t) {
  if (!(u > 0.0)) throw DomainError("level u must be > 0");
  if (!(t > 0.0)) throw DomainError("horizon t must be > 0");
  const TeugelsConstants k = teugels_constants(rm, c);
  if (std::isinf(t)) return 0.0;
  return std::exp(std::log(k.b0 * u) + k.g1 * u - 1.5 * std::log(t) - k.g2 * t - k.g3 * u * u / t);
}

double teugels_type_raw(const RenewalMoments& rm, double u, double c, double t) {
  return ig_kernel_infty(rm, u, c) - teugels_deficit(rm, u, c, t);
}

double teugels_type_cdf(const RenewalMoments& rm, double u, double c, double t) {
  return std::clamp(teugels_type_raw(rm, u, c, t), 0.0, 1.0);
}

double large_t_exp_form(const ExpModel& m, double u, double t) {
  require_rate(m.c);
  if (!(u > 0.0)) throw DomainError("level u must be > 0");
  if (!(t >= 0.0)) throw DomainError("horizon t must be >= 0");
  const double cs = m.critical_rate();
  if (m.c == cs) throw CriticalRateError("the large-t form is undefined at c = c*");
  if (t == 0.0) return 0.0;
  const double mu = cs / (cs - m.c);
  const double lambda = m.lam_t * m.lam_t * u / (2.0 * m.c * m.c * m.lam_y);
  const double x_end = std::isinf(t) ? kInf : m.c * t / u + 1.0;
  double value;
  if (m.c < cs) {
    const IGParams p(mu, lambda);
    value = ig_cdf(x_end, p) - ig_cdf(1.0, p);
  } else {
    const DefectiveIGParams p(-mu, lambda);
    value = defective_ig_cdf(x_end, p) - defective_ig_cdf(1.0, p);
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace fptime
