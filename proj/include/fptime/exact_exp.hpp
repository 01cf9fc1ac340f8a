#ifndef FPTIME_EXACT_EXP_HPP_
#define FPTIME_EXACT_EXP_HPP_

// Exact distribution of the first level-crossing time tau(u, c) of
// V_s - c s, where V is a compound Poisson process with Exp(lam_t)
// inter-arrival times and Exp(lam_y) jumps.
//
// Three algebraically different representations are provided (a single
// Bessel integral, a Bessel series under an integral, and a trigonometric
// integral over [0, pi]); they agree to quadrature accuracy and serve as the
// reference values for every approximation in the library.

#include <limits>

namespace fptime {

struct ExpModel {
  double lam_t;  // rate of the inter-arrival times
  double lam_y;  // rate of the jump sizes
  double c;      // linear drift (premium rate)

  ExpModel(double lam_t_, double lam_y_, double c_);

  // c* = lam_t / lam_y, the drift at which E V_s = c s.
  double critical_rate() const { return lam_t / lam_y; }
  // lam_t / (c lam_y); > 1 below the critical rate, < 1 above it.
  double load_ratio() const { return lam_t / (c * lam_y); }
};

struct FirstPassageQuery {
  double u;  // level
  double t;  // horizon; +inf asks for P{tau < inf}

  FirstPassageQuery(double u_, double t_);
};

inline constexpr double kInfiniteHorizon = std::numeric_limits<double>::infinity();

double type1_cdf(const ExpModel& m, const FirstPassageQuery& q);
double type2_cdf(const ExpModel& m, const FirstPassageQuery& q);
double type3_cdf(const ExpModel& m, const FirstPassageQuery& q);

// P{tau(u, c) < inf}.
double ruin_prob(const ExpModel& m, double u);

// P{v < tau <= t | T_1 = v}: the first jump happens at time v and does not
// cross on its own; crossing happens later but no later than t.
double conditional_cdf(const ExpModel& m, const FirstPassageQuery& q, double v);

namespace detail {

// Truncation point N of a Poisson(mean) law such that P{N' > N} < tail.
int poisson_cutoff(double mean, double tail, int max_terms = 100000);

}  // namespace detail

}  // namespace fptime

#endif  // FPTIME_EXACT_EXP_HPP_
