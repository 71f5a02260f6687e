#include "smdo_tune/closed_loop.hpp"

#include <cmath>
#include <utility>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

SimulationTrace simulate_closed_loop(const MimoPlant& plant,
                                     std::span<ControllerFn> controllers,
                                     std::span<const ReferenceProfile> references,
                                     double horizon_s,
                                     const ClosedLoopOptions& options) {
  validate_plant(plant, /*in_loop=*/true);
  const std::size_t dim = plant.dim;
  if (controllers.size() != dim)
    throw ValidationError("controller count does not match plant outputs");
  if (references.size() != dim)
    throw ValidationError("reference count does not match plant outputs");
  for (const ReferenceProfile& profile : references) validate_profile(profile);
  if (!options.output_bias.empty() && options.output_bias.size() != dim)
    throw ValidationError("output bias count does not match plant outputs");

  const double dt = plant.sample_time();
  if (!(horizon_s > 0.0)) throw ValidationError("horizon must be positive");
  const auto steps = static_cast<long long>(std::llround(horizon_s / dt));
  if (steps < 1 || std::abs(static_cast<double>(steps) * dt - horizon_s) >
                       1e-9 * std::max(1.0, horizon_s))
    throw ValidationError("horizon must be a positive integer multiple of dt");

  std::vector<TfChannel> channels;
  channels.reserve(dim * dim);
  for (const DiscreteTransferFunction& tf : plant.channels) channels.emplace_back(tf);

  SimulationTrace trace;
  trace.dt = dt;
  trace.expected_samples = static_cast<std::size_t>(steps) + 1;
  trace.loops.resize(dim);
  trace.t.reserve(trace.expected_samples);
  for (LoopTrace& loop : trace.loops) {
    loop.reference.reserve(trace.expected_samples);
    loop.output.reserve(trace.expected_samples);
    loop.control.reserve(trace.expected_samples);
    loop.error.reserve(trace.expected_samples);
    loop.saturated.reserve(trace.expected_samples);
  }

  std::vector<double> y(dim), u(dim);
  for (long long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;

    for (std::size_t i = 0; i < dim; ++i) {
      double acc = options.output_bias.empty() ? 0.0 : options.output_bias[i];
      for (std::size_t j = 0; j < dim; ++j) acc += channels[i * dim + j].peek();
      y[i] = acc;
    }

    bool blown = false;
    for (std::size_t i = 0; i < dim; ++i)
      blown = blown || !std::isfinite(y[i]) || std::abs(y[i]) > options.blow_up_bound;
    if (blown) {
      trace.diverged = true;
      break;
    }

    trace.t.push_back(t);
    for (std::size_t i = 0; i < dim; ++i) {
      const double r = sample_reference(references[i], t);
      const double e = r - y[i];
      const ControlStep out = controllers[i](e);
      u[i] = out.u;
      LoopTrace& loop = trace.loops[i];
      loop.reference.push_back(r);
      loop.output.push_back(y[i]);
      loop.control.push_back(out.u);
      loop.error.push_back(e);
      loop.saturated.push_back(out.saturated ? 1 : 0);
    }

    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) channels[i * dim + j].push(u[j]);
  }

  return trace;
}

SimulationTrace simulate_closed_loop(const DiscreteTransferFunction& plant,
                                     ControllerFn controller,
                                     const ReferenceProfile& reference,
                                     double horizon_s,
                                     const ClosedLoopOptions& options) {
  std::vector<ControllerFn> controllers{std::move(controller)};
  std::vector<ReferenceProfile> references{reference};
  return simulate_closed_loop(siso_plant(plant), controllers, references, horizon_s,
                              options);
}

}  // namespace smdo_tune
