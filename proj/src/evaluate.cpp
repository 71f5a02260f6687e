#include "smdo_tune/evaluate.hpp"

#include <limits>
#include <memory>
#include <string>

#include "smdo_tune/errors.hpp"
#include "smdo_tune/metrics.hpp"

namespace smdo_tune {

std::vector<PiGains> gains_from_params(const Scenario& scenario,
                                       std::span<const double> params) {
  if (params.size() != scenario.parameter_count())
    throw ValidationError("expected " + std::to_string(scenario.parameter_count()) +
                          " parameters, got " + std::to_string(params.size()));
  std::vector<PiGains> gains(scenario.loops.size());
  for (std::size_t i = 0; i < gains.size(); ++i)
    gains[i] = {params[2 * i], params[2 * i + 1]};
  return gains;
}

SimulationTrace simulate_scenario(const Scenario& scenario,
                                  std::span<const PiGains> gains,
                                  const EvalOptions& options) {
  if (gains.size() != scenario.loops.size())
    throw ValidationError("expected one gain pair per loop");

  std::vector<PiController> controllers;
  controllers.reserve(scenario.loops.size());
  std::vector<ControllerFn> steps;
  std::vector<ReferenceProfile> references;
  ClosedLoopOptions loop_options;
  loop_options.blow_up_bound = options.blow_up_bound;
  for (std::size_t i = 0; i < scenario.loops.size(); ++i) {
    const LoopConfig& loop = scenario.loops[i];
    controllers.emplace_back(gains[i], loop.saturation, loop.ci, scenario.dt_s);
    references.push_back(loop.reference);
    loop_options.output_bias.push_back(loop.output_bias);
  }
  for (PiController& controller : controllers)
    steps.emplace_back([&controller](double e) { return controller.step(e); });

  return simulate_closed_loop(scenario.plant, steps, references, scenario.horizon_s,
                              loop_options);
}

EvalResult evaluate(const Scenario& scenario, std::span<const PiGains> gains,
                    const Weights& weights, const EvalOptions& options) {
  EvalResult result;
  result.trace = simulate_scenario(scenario, gains, options);
  result.diverged = result.trace.diverged;
  if (result.diverged) {
    result.cost = std::numeric_limits<double>::infinity();
    return result;
  }
  for (std::size_t i = 0; i < scenario.loops.size(); ++i)
    result.loop_metrics.push_back(
        metric(result.trace.loops[i].error, result.trace.t, scenario.cost.metrics[i]));
  const double e1 = result.loop_metrics[0];
  const double e2 = result.loop_metrics.size() > 1 ? result.loop_metrics[1] : 0.0;
  result.cost = combine(e1, e2, weights.w1, weights.w2);
  return result;
}

Evaluator make_evaluator(const Scenario& scenario, const EvalOptions& options) {
  auto shared = std::make_shared<const Scenario>(scenario);
  return [shared, options](std::span<const double> params, const Weights& weights) {
    const std::vector<PiGains> gains = gains_from_params(*shared, params);
    return evaluate(*shared, gains, weights, options).cost;
  };
}

}  // namespace smdo_tune
