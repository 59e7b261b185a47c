// SPDX-License-Identifier: Apache-2.0

#include "csb/geometry.hpp"

#include <cmath>

namespace csb {

void UavPlaneSpec::validate() const {
  if (!(d > 0.0)) throw ConfigError("UAV plane distance d must be positive");
  if (!(beta > 0.0 && beta < kPi)) throw ConfigError("UAV plane angle beta must lie in (0, pi)");
}

double UavPlaneSpec::half_width() const { return d * std::tan(beta / 2.0); }

SphPoint rect_to_msph(const RectPoint& p, double theta_tilt) {
  if (p.x == 0.0 && p.y == 0.0 && p.z == 0.0) {
    throw GeometryError("rect_to_msph: origin has no direction");
  }
  if (!(p.x > 0.0)) throw GeometryError("rect_to_msph: point is not in front of the array (x <= 0)");
  SphPoint s;
  s.r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
  s.theta = std::atan(p.y / p.x);
  s.phi = std::atan(p.z / p.x) + theta_tilt;
  return s;
}

RectPoint uav_plane_to_rect(const UavPlaneCoord& c, const UavPlaneSpec& plane) {
  const double w = plane.half_width();
  const double st = std::sin(plane.theta_tilt);
  const double ct = std::cos(plane.theta_tilt);
  return RectPoint{c.u * w * st + plane.d * ct, c.v * w, c.u * w * ct - plane.d * st};
}

Angles msph_angles_of_plane_coord(const UavPlaneCoord& c, const UavPlaneSpec& plane) {
  const SphPoint s = rect_to_msph(uav_plane_to_rect(c, plane), plane.theta_tilt);
  return {s.theta, s.phi};
}

bool in_plane_region(const UavPlaneCoord& c, const UavPlaneSpec& plane) {
  if (std::abs(c.u) > 1.0 || std::abs(c.v) > 1.0) return false;
  const RectPoint p = uav_plane_to_rect(c, plane);
  if (!(p.x > 0.0)) return false;
  const SphPoint s = rect_to_msph(p, plane.theta_tilt);
  // Small slack so the region boundary (u or v = +-1 at zero tilt) is kept.
  const double bound = plane.beta / 2.0 + 1e-12;
  return std::abs(s.theta) <= bound && std::abs(s.phi) <= bound;
}

}  // namespace csb
