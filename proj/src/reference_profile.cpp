#include "smdo_tune/reference_profile.hpp"

#include <cmath>
#include <string>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

void validate_profile(const ReferenceProfile& profile) {
  if (profile.segments.empty())
    throw ValidationError("reference profile has no segments");
  if (profile.segments.front().start != 0.0)
    throw ValidationError("first reference segment must start at t = 0");
  double prev_start = -1.0;
  for (std::size_t s = 0; s < profile.segments.size(); ++s) {
    const ReferenceSegment& seg = profile.segments[s];
    const std::string where = "reference segment " + std::to_string(s);
    if (!std::isfinite(seg.start) || !std::isfinite(seg.level))
      throw ValidationError(where + ": non-finite field");
    if (seg.start <= prev_start)
      throw ValidationError(where + ": segment start times must be strictly increasing");
    if (seg.ramp) {
      if (!std::isfinite(seg.end) || !std::isfinite(seg.end_level))
        throw ValidationError(where + ": non-finite ramp field");
      if (seg.end <= seg.start)
        throw ValidationError(where + ": ramp end must be after its start");
    }
    prev_start = seg.start;
  }
}

double sample_reference(const ReferenceProfile& profile, double t) {
  // Last segment whose start is <= t; the later segment wins on ties.
  const ReferenceSegment* active = &profile.segments.front();
  for (const ReferenceSegment& seg : profile.segments) {
    if (seg.start <= t) active = &seg;
    else break;
  }
  if (!active->ramp) return active->level;
  if (t >= active->end) return active->end_level;
  const double frac = (t - active->start) / (active->end - active->start);
  return active->level + frac * (active->end_level - active->level);
}

}  // namespace smdo_tune
