#include "smdo_tune/trace.hpp"

#include <string>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

void validate_trace(const SimulationTrace& trace) {
  if (!(trace.dt > 0.0)) throw ValidationError("trace: dt must be positive");
  if (trace.loops.empty()) throw ValidationError("trace: no loops");
  const std::size_t n = trace.t.size();
  if (!trace.diverged && n != trace.expected_samples)
    throw ValidationError("trace: sample count does not match the horizon");
  for (std::size_t k = 0; k < n; ++k) {
    if (trace.t[k] != static_cast<double>(k) * trace.dt)
      throw ValidationError("trace: time grid is not uniform at sample " +
                            std::to_string(k));
  }
  for (std::size_t i = 0; i < trace.loops.size(); ++i) {
    const LoopTrace& loop = trace.loops[i];
    const std::string where = "trace loop " + std::to_string(i);
    if (loop.reference.size() != n || loop.output.size() != n ||
        loop.control.size() != n || loop.error.size() != n ||
        loop.saturated.size() != n)
      throw ValidationError(where + ": series lengths differ");
    for (std::size_t k = 0; k < n; ++k) {
      if (loop.error[k] != loop.reference[k] - loop.output[k])
        throw ValidationError(where + ": error != reference - output at sample " +
                              std::to_string(k));
    }
  }
}

}  // namespace smdo_tune
