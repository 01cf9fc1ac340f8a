#ifndef FPTIME_CLASSIC_APPROX_HPP_
#define FPTIME_CLASSIC_APPROX_HPP_

// The classical large-u approximations of P{tau(u, c) <= t}:
//
//   "normal"     below c*: Phi_{m- u, S-^2 u}(t)
//                above c*: C e^{-kappa u} Phi_{m+ u, S+^2 u}(t)
//   "diffusion"  the Brownian crossing probability with the first two
//                moments of V_s - c s matched.

#include "fptime/exact_exp.hpp"

namespace fptime {

// Drift/variance constants of the normal approximations, for a model with
// X = Y - cT. Fields on the "wrong" side of c* are still filled with the
// closed-form expressions but carry no meaning there.
struct MomentConstants {
  double m_minus;   // E T / E X                               (c < c*)
  double s2_minus;  // E (X E T - T E X)^2 / (E X)^3           (c < c*)
  double m_plus;    // same two constants for the associated   (c > c*)
  double s2_plus;   // pair (X^, T^) tilted by e^{kappa X}
  double big_c;     // Cramer constant C
  double kappa;     // adjustment coefficient, E e^{kappa X} = 1
};

// Closed forms for exponential T and Y. Throws CriticalRateError at c = c*.
MomentConstants cramer_constants_exp(const ExpModel& m);

// (m, S^2) from caller-supplied moments: m = E T / E X and
// S^2 = E (X E T - T E X)^2 / (E X)^3. Pass the associated moments to get
// (m+, S+^2). Requires E X > 0.
struct NormalConstants {
  double m;
  double s2;
};
NormalConstants normal_constants_from_moments(double mean_t, double mean_x, double mixed_second_moment);

// Requires 0 < c < c*.
double normal_below(const ExpModel& m, const FirstPassageQuery& q);
// Requires c > c*. Tends to ruin_prob(m, u) as t -> inf.
double normal_above(const ExpModel& m, const FirstPassageQuery& q);

struct DiffusionParams {
  double drift;   // m
  double sigma2;  // sigma^2
  DiffusionParams(double drift_, double sigma2_);
};

// P{sup_{s<=t} ((m - c) s + sigma W_s) > u}.
double diffusion_crossing_cdf(const DiffusionParams& d, double c, const FirstPassageQuery& q);

// diffusion_crossing_cdf with m = lam_t/lam_y and sigma^2 = 2 lam_t/lam_y^2.
double diffusion_approx_exp(const ExpModel& m, const FirstPassageQuery& q);

}  // namespace fptime

#endif  // FPTIME_CLASSIC_APPROX_HPP_
