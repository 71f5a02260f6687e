#pragma once

#include <vector>

namespace smdo_tune {

// One piece of a setpoint schedule. A step holds `level` from `start`
// onward; a ramp interpolates level -> end_level over [start, end] and
// holds end_level afterwards. The segment is in effect until the next
// segment's start (later segments win at the boundary).
struct ReferenceSegment {
  double start = 0.0;       // seconds
  double level = 0.0;
  bool ramp = false;
  double end = 0.0;         // ramp only
  double end_level = 0.0;   // ramp only

  friend bool operator==(const ReferenceSegment&, const ReferenceSegment&) = default;
};

struct ReferenceProfile {
  std::vector<ReferenceSegment> segments;

  friend bool operator==(const ReferenceProfile&, const ReferenceProfile&) = default;
};

// Non-empty, first segment at t = 0, strictly increasing starts, ramp
// ends past their starts. Throws ValidationError.
void validate_profile(const ReferenceProfile& profile);

// Piecewise evaluation at t >= 0; the level of the last segment (or of a
// finished ramp) holds indefinitely.
double sample_reference(const ReferenceProfile& profile, double t);

}  // namespace smdo_tune
