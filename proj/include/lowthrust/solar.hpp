#pragma once

#include <string>

#include "lowthrust/types.hpp"

namespace lowthrust {

/// Geocentric unit vector to the Sun in the equatorial (J2000-aligned) frame,
/// from mean-element solar formulae (~0.01 deg).
Vec3 sun_direction(double jd);

/// Julian date of an ISO-8601 UTC instant, e.g. "2023-12-31T00:00:00Z".
/// Leap seconds are ignored.
double parse_epoch_utc(const std::string& iso);

}  // namespace lowthrust
