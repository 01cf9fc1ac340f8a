#ifndef FPTIME_RANDOMWALK_HPP_
#define FPTIME_RANDOMWALK_HPP_

// Random walk with random displacements: unit steps, right with probability
// p and left with probability q = 1 - p, taken at the epochs of a Poisson
// process of rate 1/p. xi(y) is the position at time y and sigma_k the first
// hitting time of the point k.

#include "fptime/exact_exp.hpp"

namespace fptime {

struct WalkParams {
  double p;
  explicit WalkParams(double p_);
  double q() const { return 1.0 - p; }
};

// Positions k with non-negligible mass at time y: mean +- (12 sd + 10).
struct WalkWindow {
  int lo;
  int hi;
};
WalkWindow walk_window(const WalkParams& w, double y);

// P{xi(y) = k} = e^{-y/p} (p/q)^{k/2} I_|k|(2 y sqrt(q/p)).
double walk_pmf(const WalkParams& w, double y, int k);

// h_k(y | p) = (p/q)^{k/2} (k/y) e^{-y/p} I_k(2 y sqrt(q/p)), the density of
// sigma_k; defective when p < 1/2.
double hitting_density(const WalkParams& w, int k, double y);

// P{sigma_k <= y} by quadrature of h_k; y = +inf gives hitting_mass.
double hitting_cdf(const WalkParams& w, int k, double y);

// P{sigma_k < inf}: 1 for p >= 1/2, (p/q)^k otherwise.
double hitting_mass(const WalkParams& w, int k);

// k (p/q)^{k/2} int_0^y e^{-z/p} I_k(2 z sqrt(q/p)) dz / z minus
//   e^{-y/p} sum_{i>=k}   (p/q)^{i/2}     I_i(2 y sqrt(q/p))
// - e^{-y/p} sum_{i>=k+1} (q/p)^{i/2-k}   I_i(2 y sqrt(q/p)).
double bessel_identity_residual(const WalkParams& w, int k, double y);

// P{tau(u, c) <= t} as a Poisson(u lam_y) mixture of walk hitting
// probabilities P{sigma_{n+1}(p) <= t lam_t}, p = lam_t / (c lam_y + lam_t).
double type2_via_walk(const ExpModel& m, const FirstPassageQuery& q);

}  // namespace fptime

#endif  // FPTIME_RANDOMWALK_HPP_
