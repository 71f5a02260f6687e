#pragma once

#include <limits>

namespace smdo_tune {

struct PiGains {
  double kp = 0.0;  // proportional gain
  double ki = 0.0;  // integral gain, 1/s

  friend bool operator==(const PiGains&, const PiGains&) = default;
};

struct SaturationLimits {
  double u_min = -std::numeric_limits<double>::infinity();
  double u_max = std::numeric_limits<double>::infinity();

  bool unbounded() const {
    return u_min == -std::numeric_limits<double>::infinity() &&
           u_max == std::numeric_limits<double>::infinity();
  }

  friend bool operator==(const SaturationLimits&, const SaturationLimits&) = default;
};

// Gate that admits integrator updates only while the error is inside
// the band. Disabled, the gate passes everything through.
struct ConditionalIntegrationConfig {
  bool enabled = false;
  double error_band = std::numeric_limits<double>::infinity();

  friend bool operator==(const ConditionalIntegrationConfig&,
                         const ConditionalIntegrationConfig&) = default;
};

struct ControlStep {
  double u = 0.0;
  bool saturated = false;
};

// Discrete PI acting on the error signal with a backward-Euler
// integrator, output clamping, and clamping anti-windup: an integrator
// update that would be cancelled by saturation is rolled back, so the
// integrator holds still whenever the saturation flag is raised.
class PiController {
 public:
  PiController(PiGains gains, SaturationLimits limits,
               ConditionalIntegrationConfig ci, double dt);

  ControlStep step(double error);

  // The conditional-integration gate: true when integration is admitted
  // for this error (always true with CI disabled).
  bool admits_integration(double error) const;

  void reset() { integrator_ = 0.0; }

  const PiGains& gains() const { return gains_; }
  const SaturationLimits& limits() const { return limits_; }
  const ConditionalIntegrationConfig& ci() const { return ci_; }
  double integrator() const { return integrator_; }
  double dt() const { return dt_; }

 private:
  PiGains gains_;
  SaturationLimits limits_;
  ConditionalIntegrationConfig ci_;
  double dt_ = 1.0;
  double integrator_ = 0.0;
};

}  // namespace smdo_tune
