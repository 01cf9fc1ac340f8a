#ifndef FPTIME_CAPITAL_HPP_
#define FPTIME_CAPITAL_HPP_

// Non-ruin capital: the level u solving P{tau(u, c) <= t} = alpha.

#include <optional>
#include <vector>

#include "fptime/model_input.hpp"

namespace fptime {

enum class Backend { exact_exponential, ig_kernel };

struct CapitalQuery {
  double alpha;  // in (0, 1)
  double t;      // > 0; +inf allowed for the ig backend
  double c;      // >= 0
  Backend backend;
  CapitalQuery(double alpha_, double t_, double c_, Backend backend_);
};

// The backend c.d.f. P{tau(u, c) <= t} as a function of the level.
double backend_cdf(const CapitalQuery& q, const ModelInput& m, double u);

struct CapitalOptions {
  double u_min = 1e-6;
  std::optional<double> u_max;  // default 10 (c t + 1), or 1e4 for t = inf
  double tolerance = 1e-7;      // on |P(u) - alpha|
  int max_iterations = 200;
};

// Bisection with secant steps on a bracket where the backend is monotone.
// The exact c.d.f. decreases in u. The ig kernel at finite t vanishes as
// u -> 0, so its bracket starts at the maximiser over u, and at t = inf it
// may increase in u; the branch is picked from a scan of the bracket.
// Throws NoBracketError when alpha is out of reach after widening once.
double solve_u(const CapitalQuery& q, const ModelInput& m, const CapitalOptions& opts = {});

// Least-squares slope of ln u_{alpha,t}(c) against ln t. Needs at least 4
// increasing horizons spanning two decades.
double capital_growth_exponent(const ModelInput& m, Backend backend, double c, double alpha,
                               const std::vector<double>& t_grid);

}  // namespace fptime

#endif  // FPTIME_CAPITAL_HPP_
