#include "fptime/classic_approx.hpp"

#include <algorithm>
#include <cmath>

#include "fptime/errors.hpp"
#include "fptime/special_fns.hpp"

namespace fptime {

MomentConstants cramer_constants_exp(const ExpModel& m) {
  if (!(m.c > 0.0)) throw DomainError("normal approximation constants require c > 0");
  if (m.c == m.critical_rate()) {
    throw CriticalRateError("normal approximation constants are undefined at c = c*");
  }
  const double rho = m.load_ratio();
  const double g = 1.0 - rho;
  const double g3 = g * g * g;
  MomentConstants k{};
  k.m_minus = -1.0 / (m.c * g);
  // 2 lam_t lam_y / (lam_t - c lam_y)^3 for exponentials.
  k.s2_minus = -2.0 * rho / (m.c * m.c * m.lam_y * g3);
  k.m_plus = rho / (m.c * g);
  k.s2_plus = 2.0 * rho / (m.c * m.c * m.lam_y * g3);
  k.big_c = rho;
  k.kappa = m.lam_y * g;
  return k;
}

NormalConstants normal_constants_from_moments(double mean_t, double mean_x, double mixed_second_moment) {
  if (!(mean_x > 0.0)) throw DomainError("normal constants require E X > 0");
  if (!(mean_t > 0.0)) throw DomainError("normal constants require E T > 0");
  if (!(mixed_second_moment > 0.0)) throw DomainError("normal constants require a positive mixed moment");
  return {mean_t / mean_x, mixed_second_moment / (mean_x * mean_x * mean_x)};
}

double normal_below(const ExpModel& m, const FirstPassageQuery& q) {
  if (!(q.u > 0.0)) throw DomainError("normal approximation requires u > 0");
  if (!(m.c > 0.0)) throw DomainError("normal approximation requires c > 0");
  if (m.c >= m.critical_rate()) throw CriticalRateError("normal_below requires c < c*");
  const MomentConstants k = cramer_constants_exp(m);
  if (std::isinf(q.t)) return 1.0;
  return std_normal_cdf((q.t - k.m_minus * q.u) / std::sqrt(k.s2_minus * q.u));
}

double normal_above(const ExpModel& m, const FirstPassageQuery& q) {
  if (!(q.u > 0.0)) throw DomainError("normal approximation requires u > 0");
  if (m.c <= m.critical_rate()) throw CriticalRateError("normal_above requires c > c*");
  const MomentConstants k = cramer_constants_exp(m);
  const double log_scale = std::log(k.big_c) - k.kappa * q.u;
  if (std::isinf(q.t)) return std::exp(log_scale);
  const double z = (q.t - k.m_plus * q.u) / std::sqrt(k.s2_plus * q.u);
  return std::exp(log_scale + log_std_normal_cdf(z));
}

DiffusionParams::DiffusionParams(double drift_, double sigma2_) : drift(drift_), sigma2(sigma2_) {
  if (!std::isfinite(drift)) throw DomainError("diffusion drift must be finite");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) throw DomainError("diffusion sigma^2 must be finite and > 0");
}

double diffusion_crossing_cdf(const DiffusionParams& d, double c, const FirstPassageQuery& q) {
  if (!(q.u > 0.0)) throw DomainError("diffusion crossing requires u > 0");
  if (q.t == 0.0) return 0.0;
  const double delta = d.drift - c;
  const double log_reflect = 2.0 * delta * q.u / d.sigma2;
  if (std::isinf(q.t)) return delta >= 0.0 ? 1.0 : std::exp(log_reflect);
  const double sd = std::sqrt(d.sigma2 * q.t);
  const double first = std_normal_cdf(-(q.u - delta * q.t) / sd);
  const double second = std::exp(log_reflect + log_std_normal_cdf((-q.u - delta * q.t) / sd));
  return std::clamp(first + second, 0.0, 1.0);
}

double diffusion_approx_exp(const ExpModel& m, const FirstPassageQuery& q) {
  const DiffusionParams d(m.lam_t / m.lam_y, 2.0 * m.lam_t / (m.lam_y * m.lam_y));
  return diffusion_crossing_cdf(d, m.c, q);
}

}  // namespace fptime
