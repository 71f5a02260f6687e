#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "smdo_tune/metrics.hpp"
#include "smdo_tune/rng.hpp"

namespace smdo_tune {

// Optimizer state vector: one entry per tunable parameter, with its
// step scale (the magnitude a single trial perturbs it by, before the
// random factor) and box bounds.
struct ParameterVector {
  std::vector<double> values;
  std::vector<double> step_scales;  // > 0
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t size() const { return values.size(); }

  friend bool operator==(const ParameterVector&, const ParameterVector&) = default;
};

void validate_parameter_vector(const ParameterVector& p);

struct Weights {
  double w1 = 0.5;
  double w2 = 0.5;

  friend bool operator==(const Weights&, const Weights&) = default;
};

// Cost of a candidate under the given loop weights. Must be pure; a
// non-finite result is treated as a divergent candidate and is never
// accepted.
using Evaluator = std::function<double(std::span<const double>, const Weights&)>;

struct OptimizerConfig {
  int max_iterations = 100;
  std::optional<double> target_cost;
  std::uint64_t seed = 0;
  double step_decay = 1.0;  // step scales shrink by this factor per iteration
  WeightMode weight_mode = WeightMode::fixed;
  Weights fixed_weights;

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

void validate_optimizer_config(const OptimizerConfig& config);

enum class ComponentOutcome { accepted_forward, accepted_backward, rejected };

std::string_view to_string(ComponentOutcome outcome);

// One forward or backward trial, with everything needed to re-verify
// the acceptance inequality after the fact.
struct ComponentTest {
  std::size_t component = 0;
  bool forward = true;
  double xi = 0.0;
  std::vector<double> params_before;
  std::vector<double> candidate;
  double cost_before = 0.0;
  double cost_candidate = 0.0;
  bool accepted = false;
};

struct IterationRecord {
  int iteration = 0;  // 1-based
  Weights weights;
  double cost_start = 0.0;            // incumbent cost under these weights
  std::vector<double> step_scales;    // at iteration start
  std::vector<ComponentTest> tests;
  std::vector<ComponentOutcome> outcomes;  // one per component
  std::vector<double> params_after;
  double cost_after = 0.0;
};

struct OptimizeResult {
  std::vector<double> params;
  double cost = 0.0;
  int iterations = 0;
  int divergent_evaluations = 0;
  std::vector<IterationRecord> history;
};

// Stochastic multi-parameter divergence optimization: per component, a
// random forward step is tried and greedily accepted on strict cost
// decrease; a rejected forward step earns one backward trial with a
// fresh random factor. Candidates are clamped to the bounds before
// evaluation. With per-iteration-random weights, fresh (w1, w2) are
// drawn each iteration and the incumbent is re-scored under them before
// any test, so every comparison within the iteration is like-for-like.
class Smdo {
 public:
  Smdo(ParameterVector initial, OptimizerConfig config, Evaluator evaluator);

  // Single trials against the incumbent; xi in [0,1] scales the step.
  bool forward_test(std::size_t component, double xi);
  bool backward_test(std::size_t component, double xi);

  // One full pass over the components; draws xi (and weights, in random
  // mode) from the seeded generator and appends an IterationRecord.
  void iterate();
  // Same, with an injectable xi source for tests.
  void iterate_with(const std::function<double()>& draw_xi);

  // Iterates until the budget is spent or the incumbent cost falls
  // below the target. Under fixed weights greedy acceptance makes the
  // final incumbent the best point ever evaluated; under random weights
  // it is simply the last incumbent (costs across draws are not
  // comparable).
  OptimizeResult run();

  const ParameterVector& parameters() const { return params_; }
  double cost() const { return cost_; }
  int iteration() const { return iteration_; }
  const Weights& weights() const { return weights_; }
  const std::vector<IterationRecord>& history() const { return history_; }
  int divergent_evaluations() const { return divergent_evaluations_; }

 private:
  double evaluate(std::span<const double> candidate);
  bool directional_test(std::size_t component, double xi, double direction,
                        ComponentTest* record);

  ParameterVector params_;
  OptimizerConfig config_;
  Evaluator evaluator_;
  Rng rng_;
  Weights weights_;
  double cost_ = 0.0;
  int iteration_ = 0;
  int divergent_evaluations_ = 0;
  std::vector<IterationRecord> history_;
};

// Convenience wrapper: construct, run, return the result.
OptimizeResult optimize(ParameterVector initial, OptimizerConfig config,
                        Evaluator evaluator);

}  // namespace smdo_tune
