#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "smdo_tune/pi_controller.hpp"
#include "smdo_tune/reference_profile.hpp"
#include "smdo_tune/trace.hpp"
#include "smdo_tune/transfer_function.hpp"

namespace smdo_tune {

// Any controller usable in the loop: error in, clamped output and
// saturation flag out. Saturation is the controller's business; the
// simulator only records the flag.
using ControllerFn = std::function<ControlStep(double error)>;

struct ClosedLoopOptions {
  // |output| beyond this (or a non-finite output) marks the trace
  // diverged and stops the run at that step.
  double blow_up_bound = std::numeric_limits<double>::infinity();
  // Constant per-loop offset added to the plant output before the
  // controller sees it; empty means none.
  std::vector<double> output_bias;
};

// Fixed-step loop at the plant sample time, measure-then-act: at each
// step the outputs are read from the plant memory, errors formed,
// controllers invoked, and only then the plant advanced with the new
// inputs, so u[k] affects outputs from k+1 on. Controller i commands
// plant input i. Requires strictly proper channels.
SimulationTrace simulate_closed_loop(const MimoPlant& plant,
                                     std::span<ControllerFn> controllers,
                                     std::span<const ReferenceProfile> references,
                                     double horizon_s,
                                     const ClosedLoopOptions& options = {});

SimulationTrace simulate_closed_loop(const DiscreteTransferFunction& plant,
                                     ControllerFn controller,
                                     const ReferenceProfile& reference,
                                     double horizon_s,
                                     const ClosedLoopOptions& options = {});

}  // namespace smdo_tune
