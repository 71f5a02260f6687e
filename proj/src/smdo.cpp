#include "smdo_tune/smdo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

void validate_parameter_vector(const ParameterVector& p) {
  const std::size_t n = p.values.size();
  if (n == 0) throw ValidationError("parameter vector is empty");
  if (p.step_scales.size() != n || p.lower.size() != n || p.upper.size() != n)
    throw ValidationError("parameter vector field lengths differ");
  for (std::size_t v = 0; v < n; ++v) {
    if (!std::isfinite(p.values[v]))
      throw ValidationError("parameter " + std::to_string(v) + " is not finite");
    if (!(p.step_scales[v] > 0.0) || !std::isfinite(p.step_scales[v]))
      throw ValidationError("step scale " + std::to_string(v) + " must be positive");
    if (!(p.lower[v] <= p.upper[v]))
      throw ValidationError("bounds " + std::to_string(v) + " are not ordered");
    if (p.values[v] < p.lower[v] || p.values[v] > p.upper[v])
      throw ValidationError("parameter " + std::to_string(v) + " is out of bounds");
  }
}

void validate_optimizer_config(const OptimizerConfig& config) {
  if (config.max_iterations < 1)
    throw ValidationError("max_iterations must be at least 1");
  if (!(config.step_decay > 0.0) || config.step_decay > 1.0)
    throw ValidationError("step_decay must lie in (0, 1]");
  if (config.target_cost && std::isnan(*config.target_cost))
    throw ValidationError("target_cost must not be NaN");
  if (!(config.fixed_weights.w1 >= 0.0 && config.fixed_weights.w1 <= 1.0) ||
      !(config.fixed_weights.w2 >= 0.0 && config.fixed_weights.w2 <= 1.0))
    throw ValidationError("weights must lie in [0, 1]");
}

std::string_view to_string(ComponentOutcome outcome) {
  switch (outcome) {
    case ComponentOutcome::accepted_forward: return "accepted-forward";
    case ComponentOutcome::accepted_backward: return "accepted-backward";
    case ComponentOutcome::rejected: return "rejected";
  }
  return "?";
}

Smdo::Smdo(ParameterVector initial, OptimizerConfig config, Evaluator evaluator)
    : params_(std::move(initial)),
      config_(std::move(config)),
      evaluator_(std::move(evaluator)),
      rng_(config_.seed),
      weights_(config_.fixed_weights) {
  validate_parameter_vector(params_);
  validate_optimizer_config(config_);
  if (!evaluator_) throw ValidationError("evaluator is empty");
  cost_ = evaluate(params_.values);
}

double Smdo::evaluate(std::span<const double> candidate) {
  double c = evaluator_(candidate, weights_);
  if (std::isnan(c)) c = std::numeric_limits<double>::infinity();
  if (!std::isfinite(c)) {
    c = std::numeric_limits<double>::infinity();
    ++divergent_evaluations_;
  }
  return c;
}

bool Smdo::directional_test(std::size_t component, double xi, double direction,
                            ComponentTest* record) {
  if (component >= params_.size())
    throw ValidationError("component index out of range");
  if (!(xi >= 0.0 && xi <= 1.0))
    throw ValidationError("xi must lie in [0, 1]");

  std::vector<double> candidate = params_.values;
  candidate[component] =
      std::clamp(candidate[component] +
                     direction * params_.step_scales[component] * xi,
                 params_.lower[component], params_.upper[component]);
  const double candidate_cost = evaluate(candidate);
  const bool accepted = candidate_cost < cost_;

  if (record) {
    record->component = component;
    record->forward = direction > 0.0;
    record->xi = xi;
    record->params_before = params_.values;
    record->candidate = candidate;
    record->cost_before = cost_;
    record->cost_candidate = candidate_cost;
    record->accepted = accepted;
  }
  if (accepted) {
    params_.values = std::move(candidate);
    cost_ = candidate_cost;
  }
  return accepted;
}

bool Smdo::forward_test(std::size_t component, double xi) {
  return directional_test(component, xi, +1.0, nullptr);
}

bool Smdo::backward_test(std::size_t component, double xi) {
  return directional_test(component, xi, -1.0, nullptr);
}

void Smdo::iterate() {
  iterate_with([this] { return rng_.uniform01(); });
}

void Smdo::iterate_with(const std::function<double()>& draw_xi) {
  IterationRecord rec;
  rec.iteration = iteration_ + 1;

  if (config_.weight_mode == WeightMode::per_iteration_random) {
    weights_.w1 = rng_.uniform01();
    weights_.w2 = rng_.uniform01();
    cost_ = evaluate(params_.values);
  }
  rec.weights = weights_;
  rec.cost_start = cost_;
  rec.step_scales = params_.step_scales;

  for (std::size_t v = 0; v < params_.size(); ++v) {
    ComponentTest test;
    if (directional_test(v, draw_xi(), +1.0, &test)) {
      rec.tests.push_back(std::move(test));
      rec.outcomes.push_back(ComponentOutcome::accepted_forward);
      continue;
    }
    rec.tests.push_back(std::move(test));
    ComponentTest back;
    const bool accepted = directional_test(v, draw_xi(), -1.0, &back);
    rec.tests.push_back(std::move(back));
    rec.outcomes.push_back(accepted ? ComponentOutcome::accepted_backward
                                    : ComponentOutcome::rejected);
  }

  for (double& scale : params_.step_scales) scale *= config_.step_decay;

  rec.params_after = params_.values;
  rec.cost_after = cost_;
  history_.push_back(std::move(rec));
  ++iteration_;
}

OptimizeResult Smdo::run() {
  const auto target_reached = [this] {
    return config_.target_cost && cost_ < *config_.target_cost;
  };
  while (iteration_ < config_.max_iterations && !target_reached()) iterate();

  OptimizeResult result;
  result.params = params_.values;
  result.cost = cost_;
  result.iterations = iteration_;
  result.divergent_evaluations = divergent_evaluations_;
  result.history = history_;
  return result;
}

OptimizeResult optimize(ParameterVector initial, OptimizerConfig config,
                        Evaluator evaluator) {
  Smdo optimizer(std::move(initial), std::move(config), std::move(evaluator));
  return optimizer.run();
}

}  // namespace smdo_tune
