#pragma once

#include <span>
#include <vector>

#include "smdo_tune/closed_loop.hpp"
#include "smdo_tune/scenario.hpp"
#include "smdo_tune/smdo.hpp"
#include "smdo_tune/trace.hpp"

namespace smdo_tune {

struct EvalOptions {
  // |output| beyond this marks the candidate divergent: the cost becomes
  // +infinity instead of an exception so the optimizer survives unstable
  // gain candidates.
  double blow_up_bound = 1e9;
};

struct EvalResult {
  double cost = 0.0;
  bool diverged = false;
  std::vector<double> loop_metrics;  // per loop, the scenario's metric kind
  SimulationTrace trace;
};

// Closed-loop run of the scenario under the given per-loop gains.
SimulationTrace simulate_scenario(const Scenario& scenario,
                                  std::span<const PiGains> gains,
                                  const EvalOptions& options = {});

// Simulates, scores each loop with its metric kind, and blends the loop
// costs with the given weights. Pure: same inputs, same result.
EvalResult evaluate(const Scenario& scenario, std::span<const PiGains> gains,
                    const Weights& weights, const EvalOptions& options = {});

// Flat-parameter adapter for the optimizer: params are
// [kp1, ki1, kp2, ki2, ...] in loop order.
std::vector<PiGains> gains_from_params(const Scenario& scenario,
                                       std::span<const double> params);

Evaluator make_evaluator(const Scenario& scenario, const EvalOptions& options = {});

}  // namespace smdo_tune
