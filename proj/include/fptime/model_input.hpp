#ifndef FPTIME_MODEL_INPUT_HPP_
#define FPTIME_MODEL_INPUT_HPP_

// A model as a caller describes it: exponential rates (lam_t, lam_y), or
// renewal moments (M, D^2) for methods that only need those two numbers.

#include <optional>

#include "fptime/exact_exp.hpp"
#include "fptime/ig_approx.hpp"

namespace fptime {

struct ModelInput {
  std::optional<double> lam_t;
  std::optional<double> lam_y;
  std::optional<RenewalMoments> moments;

  static ModelInput exponential(double lam_t, double lam_y);
  static ModelInput renewal(const RenewalMoments& rm);

  bool has_rates() const { return lam_t.has_value() && lam_y.has_value(); }
  // Throws DomainError when the rates are missing.
  ExpModel exp_model(double c) const;
  // The given moments, or those of the exponential model.
  RenewalMoments renewal_moments() const;
};

}  // namespace fptime

#endif  // FPTIME_MODEL_INPUT_HPP_
