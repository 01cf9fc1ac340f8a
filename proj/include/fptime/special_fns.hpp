#ifndef FPTIME_SPECIAL_FNS_HPP_
#define FPTIME_SPECIAL_FNS_HPP_

// Scalar kernels shared by every formula in the library: the standard
// normal c.d.f. and its logarithm, exponentially scaled modified Bessel
// functions of integer order, and the inverse Gaussian c.d.f. (proper and
// defective).
//
// Everything here is pure and reentrant.

#include <vector>

namespace fptime {

// Parameters (mu, lambda) of the inverse Gaussian law with c.d.f.
//
//   F(x; mu, lambda) = Phi(sqrt(lambda/x) (x/mu - 1))
//                    + exp(2 lambda/mu) Phi(-sqrt(lambda/x) (x/mu + 1)).
//
// mu = +inf is accepted and gives the zero-drift limit 2 Phi(-sqrt(lambda/x)).
struct IGParams {
  double mu;
  double lambda;
  IGParams(double mu_, double lambda_);
};

// Defective inverse Gaussian law exp(-2 lambda/mu_hat) F(x; mu_hat, lambda),
// i.e. a drift pointing away from the level.
struct DefectiveIGParams {
  double mu_hat;
  double lambda;
  DefectiveIGParams(double mu_hat_, double lambda_);
  // Total mass exp(-2 lambda / mu_hat).
  double mass() const;
};

double std_normal_cdf(double x);

// log Phi(x). Below x = -8 the Gaussian tail is evaluated through the
// Laplace continued fraction for the Mills ratio, so the result stays finite
// far past the point where Phi(x) underflows.
double log_std_normal_cdf(double x);

// e^{-x} I_n(x) for integer n >= 0 and x >= 0.
double bessel_i_scaled(int n, double x);

// log(e^{-x} I_n(x)); -inf when the value is exactly zero (n > 0, x = 0).
double log_bessel_i_scaled(int n, double x);

// log(e^{-x} I_k(x)) for k = 0..n_max in one pass.
std::vector<double> log_bessel_i_scaled_sequence(int n_max, double x);

double ig_cdf(double x, const IGParams& p);
double ig_pdf(double x, const IGParams& p);
double log_ig_pdf(double x, const IGParams& p);

double defective_ig_cdf(double x, const DefectiveIGParams& p);

// Upper tails 1 - F and mass - F, evaluated directly so that tiny tails keep
// their relative accuracy.
double ig_sf(double x, const IGParams& p);
double defective_ig_sf(double x, const DefectiveIGParams& p);

namespace detail {

// Power series, intended for x <= kBesselSeriesLimit.
double log_bessel_i_scaled_series(int n, double x);
// Large-argument branch: Hankel expansion for orders 0 and 1, continued
// fraction plus downward ratio recurrence for higher orders.
double log_bessel_i_scaled_large(int n, double x);

inline constexpr double kBesselSeriesLimit = 30.0;
inline constexpr double kLogPhiTailSwitch = -8.0;

}  // namespace detail

}  // namespace fptime

#endif  // FPTIME_SPECIAL_FNS_HPP_
