#ifndef FPTIME_IG_APPROX_HPP_
#define FPTIME_IG_APPROX_HPP_

// The inverse Gaussian approximation of P{tau(u, c) <= t} for a general
// compound renewal process, described by two numbers:
//
//   M   = E T / E Y
//   D^2 = ((E T)^2 Var Y + (E Y)^2 Var T) / (E Y)^3
//
// The kernel A_M(u, c | t, v) approximates P{v < tau <= t | T1 = v}. With
// w = u + c v, lambda = w / (c^2 D^2) and x_end = 1 + c (t - v) / w it is
//
//   F(x_end; mu, lambda) - F(1; mu, lambda),            mu = 1/(1 - cM), c < 1/M
//   e^{-2 lambda/mu^} (F(x_end; mu^) - F(1; mu^)),      mu^ = 1/(cM - 1), c > 1/M
//
// and at c = 1/M the zero-drift limit of either line.

#include <optional>

#include "fptime/exact_exp.hpp"
#include "fptime/laws.hpp"

namespace fptime {

struct RenewalMoments {
  double big_m;
  double d2;
  RenewalMoments(double big_m_, double d2_);

  static RenewalMoments from_exp(double lam_t, double lam_y);
  // Needs finite variances of both laws.
  static RenewalMoments from_laws(const LawSpec& t_law, const LawSpec& y_law);

  double critical_rate() const { return 1.0 / big_m; }
};

// A_M(u, c | t, v). Requires c > 0, 0 <= v <= t, u + c v > 0; t may be +inf.
double ig_kernel(const RenewalMoments& rm, double u, double c, double t, double v = 0.0);

// The same quantity by quadrature of
//   int_0^{c(t-v)/w} (1+y)^{-1} phi_{cM(1+y), c^2 D^2 (1+y)/w}(y) dy,
// phi_{a,b} the normal density with mean a and variance b. Finite t only.
double ig_kernel_integral_form(const RenewalMoments& rm, double u, double c, double t, double v = 0.0);

// A_M(u, c | inf) for c >= 0.
double ig_kernel_infty(const RenewalMoments& rm, double u, double c);

// A_M(u, c | inf) - A_M(u, c | t), computed from the upper tail directly.
double ig_kernel_deficit(const RenewalMoments& rm, double u, double c, double t);

// Closed forms at c = 1/M:
//   A(t)   = 2 (Phi(sqrt(u)/(c* D)) - Phi(u / (c* D sqrt(c* t + u))))
//   A(inf) = 2 Phi(M sqrt(u)/D) - 1
double kernel_at_critical_rate(const RenewalMoments& rm, double u, double t);

// int_0^t P{Y > u + cv} f_T1(v) dv + int_0^t A_M(u, c | t - v) f_T1(v) dv.
// Without y_law the first (early crossing) term is dropped. A point mass T1
// contributes its single atom.
double unconditional_approx(const RenewalMoments& rm, double u, double c, double t, const LawSpec& t1,
                            const std::optional<LawSpec>& y_law = std::nullopt);

struct TeugelsConstants {
  double b0;  // B^
  double g1;
  double g2;
  double g3;
};

// B^ = sqrt(2/pi) D / (sqrt(c) (1 - cM)^2), g1 = (1 - cM)/(c^2 D^2),
// g2 = (1 - cM)^2 / (2 c D^2), g3 = 1 / (2 c^3 D^2).
// Throws CriticalRateError at c = 1/M.
TeugelsConstants teugels_constants(const RenewalMoments& rm, double c);
// The exponential-model display of the same constants.
TeugelsConstants teugels_constants_exp(const ExpModel& m);

// B^ u e^{g1 u} t^{-3/2} e^{-g2 t} e^{-g3 u^2 / t}.
double teugels_deficit(const RenewalMoments& rm, double u, double c, double t);
// A(inf) - teugels_deficit, unclamped.
double teugels_type_raw(const RenewalMoments& rm, double u, double c, double t);
// teugels_type_raw clamped to [0, 1].
double teugels_type_cdf(const RenewalMoments& rm, double u, double c, double t);

// The v = 0 kernel written with the exponential rates:
// mu = (lam_t/lam_y) / (lam_t/lam_y - c), lambda = lam_t^2 u / (2 c^2 lam_y).
// Throws CriticalRateError at c = c*.
double large_t_exp_form(const ExpModel& m, double u, double t);

}  // namespace fptime

#endif  // FPTIME_IG_APPROX_HPP_
