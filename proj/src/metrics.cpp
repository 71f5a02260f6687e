#include "smdo_tune/metrics.hpp"

#include <cmath>
#include <string>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

MetricKind metric_kind_from_string(std::string_view name) {
  if (name == "ise") return MetricKind::ise;
  if (name == "iae") return MetricKind::iae;
  if (name == "itae") return MetricKind::itae;
  if (name == "mse") return MetricKind::mse;
  throw ValidationError("unknown metric kind '" + std::string(name) +
                        "' (expected ise, iae, itae or mse)");
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::ise: return "ise";
    case MetricKind::iae: return "iae";
    case MetricKind::itae: return "itae";
    case MetricKind::mse: return "mse";
  }
  return "?";
}

WeightMode weight_mode_from_string(std::string_view name) {
  if (name == "fixed") return WeightMode::fixed;
  if (name == "per-iteration-random") return WeightMode::per_iteration_random;
  throw ValidationError("unknown weight mode '" + std::string(name) +
                        "' (expected fixed or per-iteration-random)");
}

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::fixed ? "fixed" : "per-iteration-random";
}

double metric(std::span<const double> error, double dt, MetricKind kind, double t0) {
  if (error.empty()) throw ValidationError("metric of an empty error sequence");
  if (!(dt > 0.0)) throw ValidationError("metric requires a positive dt");
  double acc = 0.0;
  switch (kind) {
    case MetricKind::ise:
      for (double e : error) acc += e * e * dt;
      break;
    case MetricKind::iae:
      for (double e : error) acc += std::abs(e) * dt;
      break;
    case MetricKind::itae:
      for (std::size_t k = 0; k < error.size(); ++k)
        acc += (t0 + static_cast<double>(k) * dt) * std::abs(error[k]) * dt;
      break;
    case MetricKind::mse:
      for (double e : error) acc += e * e;
      acc /= static_cast<double>(error.size());
      break;
  }
  return acc;
}

double metric(std::span<const double> error, std::span<const double> t,
              MetricKind kind) {
  if (error.size() != t.size())
    throw ValidationError("metric: error and time series lengths differ");
  if (error.empty()) throw ValidationError("metric of an empty error sequence");
  if (t.size() < 2)
    throw ValidationError("metric: cannot infer dt from a single sample");
  return metric(error, t[1] - t[0], kind, t[0]);
}

double combine(double e1, double e2, double w1, double w2) {
  return w1 * e1 + w2 * e2;
}

double j_index(std::span<const double> candidate_metrics,
               std::span<const double> baseline_metrics,
               std::span<const double> loop_weights) {
  if (candidate_metrics.size() != baseline_metrics.size() ||
      candidate_metrics.size() != loop_weights.size() || candidate_metrics.empty())
    throw ValidationError("j_index: per-loop series lengths differ or are empty");
  double j = 0.0;
  for (std::size_t i = 0; i < candidate_metrics.size(); ++i) {
    if (baseline_metrics[i] == 0.0) throw ValidationError("degenerate baseline");
    j += loop_weights[i] * (candidate_metrics[i] / baseline_metrics[i]);
  }
  return j;
}

}  // namespace smdo_tune
