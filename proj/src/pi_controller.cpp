#include "smdo_tune/pi_controller.hpp"

#include <algorithm>
#include <cmath>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

PiController::PiController(PiGains gains, SaturationLimits limits,
                           ConditionalIntegrationConfig ci, double dt)
    : gains_(gains), limits_(limits), ci_(ci), dt_(dt) {
  if (!std::isfinite(gains_.kp) || !std::isfinite(gains_.ki))
    throw ValidationError("PI gains must be finite");
  if (!(limits_.u_min < limits_.u_max))
    throw ValidationError("saturation limits: u_min must be below u_max");
  if (!(ci_.error_band > 0.0))
    throw ValidationError("conditional integration band must be positive");
  if (!(dt_ > 0.0)) throw ValidationError("controller dt must be positive");
}

bool PiController::admits_integration(double error) const {
  return !ci_.enabled || std::abs(error) <= ci_.error_band;
}

ControlStep PiController::step(double error) {
  if (!std::isfinite(error)) throw ValidationError("non-finite controller error");

  const bool admit = admits_integration(error);
  const double tentative =
      admit ? integrator_ + gains_.ki * dt_ * error : integrator_;
  const double unclamped = gains_.kp * error + tentative;
  const double u = std::clamp(unclamped, limits_.u_min, limits_.u_max);
  const bool saturated = u != unclamped;
  // Clamping rolls the update back; the integrator never moves while
  // the output is pinned at a limit.
  integrator_ = saturated ? integrator_ : tentative;
  return {u, saturated};
}

}  // namespace smdo_tune
