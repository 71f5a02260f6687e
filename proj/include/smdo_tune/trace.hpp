#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace smdo_tune {

// Time-aligned series for one control loop. `saturated[k]` flags steps
// where the actuator limit clipped the controller output.
struct LoopTrace {
  std::vector<double> reference;
  std::vector<double> output;
  std::vector<double> control;
  std::vector<double> error;            // error[k] = reference[k] - output[k]
  std::vector<std::uint8_t> saturated;
};

struct SimulationTrace {
  double dt = 0.0;
  std::vector<double> t;                // t[k] = k * dt
  std::vector<LoopTrace> loops;
  bool diverged = false;
  // Samples a full run would hold (horizon / dt + 1). A diverged trace
  // is truncated at the step that tripped the blow-up bound.
  std::size_t expected_samples = 0;

  std::size_t samples() const { return t.size(); }
};

// Enforces the trace invariants: uniform grid, equal series lengths,
// error = reference - output bit-exactly, and full length unless the
// trace diverged. Throws ValidationError.
void validate_trace(const SimulationTrace& trace);

}  // namespace smdo_tune
