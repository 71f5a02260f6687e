#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smdo_tune/metrics.hpp"
#include "smdo_tune/pi_controller.hpp"
#include "smdo_tune/reference_profile.hpp"
#include "smdo_tune/smdo.hpp"
#include "smdo_tune/transfer_function.hpp"

namespace smdo_tune {

struct GainBounds {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const GainBounds&, const GainBounds&) = default;
};

// Everything one control loop needs besides the plant: where its gains
// start and may move, the actuator limits, the integrator gate, the
// setpoint schedule, and a constant bias added to the measured output.
struct LoopConfig {
  PiGains gains_init;
  GainBounds kp_bounds;
  GainBounds ki_bounds;
  SaturationLimits saturation;
  ConditionalIntegrationConfig ci;
  ReferenceProfile reference;
  double output_bias = 0.0;

  friend bool operator==(const LoopConfig&, const LoopConfig&) = default;
};

struct Scenario {
  MimoPlant plant;
  std::vector<LoopConfig> loops;
  double horizon_s = 0.0;
  double dt_s = 0.0;
  CostSpec cost;
  OptimizerConfig optimizer;
  // Step scales per tunable parameter [kp1, ki1, kp2, ki2, ...]; filled
  // with a tenth of each bound range when the document omits them.
  std::vector<double> step_scales;

  std::size_t parameter_count() const { return 2 * loops.size(); }

  // Flat [kp1, ki1, ...] view with bounds and step scales, the
  // optimizer's starting point.
  ParameterVector initial_parameters() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Checks every scenario invariant (plant strictly proper, dt/horizon
// consistent, bounds ordered, initial gains inside them, profiles
// valid, cost and optimizer sections coherent). Throws ValidationError
// with a path-qualified message.
void validate_scenario(const Scenario& scenario);

// Parses and fully validates a JSON scenario document. Unknown keys are
// rejected. The inverse of save_scenario.
Scenario load_scenario(const std::string& json_text);
Scenario load_scenario_file(const std::filesystem::path& path);

std::string save_scenario(const Scenario& scenario);

struct NamedScenario {
  std::string name;
  Scenario scenario;
};

// Small analytically tractable plants used as test oracles:
// a unit delay, a first-order lag with pole 0.9 and unit DC gain, and a
// second-order lag with real poles 0.8 and 0.5.
std::vector<NamedScenario> builtin_oracle_plants();

// Two-loop surrogate with refrigeration-style time scales: a slow first
// loop, a faster second loop, weak cross-coupling, actuator limits and
// a constant output bias on loop 1. Fixture coefficients; see
// scenarios/README.md for how they were chosen.
Scenario builtin_surrogate_refrigeration();

// Everything above in one list.
std::vector<NamedScenario> builtin_scenarios();

// Resolves "builtin:<name>" specs as well as filesystem paths, and
// returns the scenario plus a short id for reports (the builtin name or
// the file stem).
struct LoadedScenario {
  std::string id;
  Scenario scenario;
};
LoadedScenario resolve_scenario(const std::string& spec);

}  // namespace smdo_tune
