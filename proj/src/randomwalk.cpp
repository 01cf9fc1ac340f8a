#include "fptime/randomwalk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fptime/errors.hpp"
#include "fptime/quadrature.hpp"
#include "fptime/special_fns.hpp"

namespace fptime {

namespace {

constexpr int kMaxOrder = 100000;
constexpr double kPoissonTail = 1e-12;

double log_walk_term(const WalkParams& w, double y, int k, double log_i_scaled) {
  const double z = 2.0 * y * std::sqrt(w.q() / w.p);
  return -y / w.p + z + 0.5 * k * std::log(w.p / w.q()) + log_i_scaled;
}

void require_step(int k) {
  if (k < 1) throw DomainError("hitting point k must be >= 1");
}

}  // namespace

WalkParams::WalkParams(double p_) : p(p_) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("walk probability p must lie in (0, 1)");
}

WalkWindow walk_window(const WalkParams& w, double y) {
  if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("walk time y must be finite and >= 0");
  const double mean = (1.0 - w.q() / w.p) * y;
  const double reach = 12.0 * std::sqrt(y / w.p) + 10.0;
  const double lo = std::floor(mean - reach), hi = std::ceil(mean + reach);
  if (lo < -kMaxOrder || hi > kMaxOrder) {
    throw TruncationError("walk window at y = " + std::to_string(y) + " exceeds " + std::to_string(kMaxOrder));
  }
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

double walk_pmf(const WalkParams& w, double y, int k) {
  if (!(y >= 0.0)) throw DomainError("walk time y must be >= 0");
  if (y == 0.0) return k == 0 ? 1.0 : 0.0;
  const double z = 2.0 * y * std::sqrt(w.q() / w.p);
  return std::exp(log_walk_term(w, y, k, log_bessel_i_scaled(std::abs(k), z)));
}

double hitting_density(const WalkParams& w, int k, double y) {
  require_step(k);
  if (!(y > 0.0)) return 0.0;
  return k / y * walk_pmf(w, y, k);
}

double hitting_mass(const WalkParams& w, int k) {
  require_step(k);
  if (w.p >= 0.5) return 1.0;
  return std::exp(k * std::log(w.p / w.q()));
}

double hitting_cdf(const WalkParams& w, int k, double y) {
  require_step(k);
  if (!(y >= 0.0)) throw DomainError("walk time y must be >= 0");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return hitting_mass(w, k);
  quad::Breaks br(0.0, y);
  br.ladder(w.p);
  if (w.p > w.q()) {
    const double speed = (w.p - w.q()) / w.p;
    const double center = k / speed;
    br.peak(center, std::sqrt(center / w.p) / speed, 6);
  }
  quad::Options opts;
  opts.abs_tol = 1e-12;
  opts.max_panels = 20000;
  const double value = quad::integrate([&](double z) { return hitting_density(w, k, z); }, br, opts);
  return std::clamp(value, 0.0, hitting_mass(w, k));
}

double bessel_identity_residual(const WalkParams& w, int k, double y) {
  require_step(k);
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("walk time y must be finite and > 0");
  const WalkWindow win = walk_window(w, y);
  const int i_max = std::max({k, win.hi, -win.lo}) + 1;
  const double z = 2.0 * y * std::sqrt(w.q() / w.p);
  const std::vector<double> log_i = log_bessel_i_scaled_sequence(i_max, z);
  const double log_pq = std::log(w.p / w.q());
  double rhs = 0.0;
  for (int i = k; i <= i_max; ++i) {
    const double base = -y / w.p + z + log_i[i];
    rhs += std::exp(base + 0.5 * i * log_pq);
    if (i > k) rhs += std::exp(base - (0.5 * i - k) * log_pq);
  }
  return hitting_cdf(w, k, y) - rhs;
}

double type2_via_walk(const ExpModel& m, const FirstPassageQuery& q) {
  if (!(m.c > 0.0)) throw DomainError("drift c must be > 0 for the exact formulas");
  if (q.t == 0.0) return 0.0;
  const double mean = q.u * m.lam_y;
  const int n_max = detail::poisson_cutoff(mean, kPoissonTail);
  const WalkParams w(m.lam_t / (m.c * m.lam_y + m.lam_t));
  const double y = q.t * m.lam_t;
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const double log_weight = mean > 0.0 ? -mean + n * std::log(mean) - std::lgamma(n + 1.0) : 0.0;
    total += std::exp(log_weight) * hitting_cdf(w, n + 1, y);
  }
  return std::clamp(total, 0.0, 1.0);
}

}  // namespace fptime
