// SPDX-License-Identifier: Apache-2.0
//
// Coordinate transforms between rectangular space, the modified spherical
// system of the TX array and the 2D coordinates of the UAV plane.
//
// In the modified spherical system the elevation angle is measured between
// the XZ-plane projection of a point and the array normal, so both array
// dimensions see the same steering-vector form:
//   r = |p|,  theta = atan(y/x),  phi = atan(z/x) + theta_tilt.

#pragma once

#include "csb/types.hpp"

namespace csb {

struct RectPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct SphPoint {
  double r = 0.0;
  double theta = 0.0;  // azimuth, radians
  double phi = 0.0;    // elevation incl. tilt, radians
};

struct Angles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Virtual plane parallel to the TX array at distance d; beta is the angle
/// the bounded region subtends at the array centre along each axis.
struct UavPlaneSpec {
  double d = 1.0;
  double beta = deg2rad(160.0);
  double theta_tilt = 0.0;

  void validate() const;
  double half_width() const;  // d * tan(beta / 2)
};

struct UavPlaneCoord {
  double u = 0.0;
  double v = 0.0;
};

/// Rejects points with x <= 0 (behind or in the array plane) and the origin.
SphPoint rect_to_msph(const RectPoint& p, double theta_tilt);

RectPoint uav_plane_to_rect(const UavPlaneCoord& c, const UavPlaneSpec& plane);

Angles msph_angles_of_plane_coord(const UavPlaneCoord& c, const UavPlaneSpec& plane);

/// True when the plane point lies in front of the array and both of its
/// angles fall inside [-beta/2, beta/2]. With a non-zero tilt part of the
/// [-1,1]^2 square maps outside this region.
bool in_plane_region(const UavPlaneCoord& c, const UavPlaneSpec& plane);

}  // namespace csb
