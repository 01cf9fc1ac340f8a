#include "fptime/model_input.hpp"

#include "fptime/errors.hpp"

namespace fptime {

ModelInput ModelInput::exponential(double lam_t, double lam_y) {
  ExpModel check(lam_t, lam_y, 0.0);
  ModelInput m;
  m.lam_t = check.lam_t;
  m.lam_y = check.lam_y;
  return m;
}

ModelInput ModelInput::renewal(const RenewalMoments& rm) {
  ModelInput m;
  m.moments = rm;
  return m;
}

ExpModel ModelInput::exp_model(double c) const {
  if (!has_rates()) throw DomainError("this method needs exponential rates lam_t and lam_y");
  return ExpModel(*lam_t, *lam_y, c);
}

RenewalMoments ModelInput::renewal_moments() const {
  if (moments) return *moments;
  if (!has_rates()) throw DomainError("this method needs (M, D^2) or exponential rates");
  return RenewalMoments::from_exp(*lam_t, *lam_y);
}

}  // namespace fptime
