#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace smdo_tune {

enum class MetricKind { ise, iae, itae, mse };

MetricKind metric_kind_from_string(std::string_view name);
std::string_view to_string(MetricKind kind);

// Left-point rectangle sums over the sampled error signal:
//   ISE  = sum e[k]^2 dt        IAE = sum |e[k]| dt
//   ITAE = sum t[k] |e[k]| dt   MSE = (1/N) sum e[k]^2
// Throws ValidationError on an empty sequence.
double metric(std::span<const double> error, double dt, MetricKind kind,
              double t0 = 0.0);

// Same, with dt and t0 taken from the (uniform) time grid.
double metric(std::span<const double> error, std::span<const double> t,
              MetricKind kind);

// Weighted two-loop cost, w1*e1 + w2*e2.
double combine(double e1, double e2, double w1, double w2);

// Benchmark-style relative index: weighted sum of per-loop ratios
// candidate/baseline of the scenario metric. J < 1 means the candidate
// beats the baseline. Throws on a zero baseline metric.
double j_index(std::span<const double> candidate_metrics,
               std::span<const double> baseline_metrics,
               std::span<const double> loop_weights);

enum class WeightMode { fixed, per_iteration_random };

WeightMode weight_mode_from_string(std::string_view name);
std::string_view to_string(WeightMode mode);

// How traces are scored: one metric kind per loop plus the weights that
// blend the per-loop values into the scalar cost. In the random mode
// the optimizer redraws w1, w2 once per iteration.
struct CostSpec {
  std::vector<MetricKind> metrics;
  double w1 = 0.5;
  double w2 = 0.5;
  WeightMode weight_mode = WeightMode::fixed;

  friend bool operator==(const CostSpec&, const CostSpec&) = default;
};

}  // namespace smdo_tune
