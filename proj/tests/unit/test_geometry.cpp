// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "csb/geometry.hpp"
#include "doctest.h"

using namespace csb;
using doctest::Approx;

TEST_SUITE("geometry") {
  TEST_CASE("rect_to_msph reference points") {
    auto s = rect_to_msph({1, 0, 0}, 0.0);
    CHECK(s.r == 1.0);
    CHECK(s.theta == 0.0);
    CHECK(s.phi == 0.0);

    s = rect_to_msph({1, 1, 0}, 0.0);
    CHECK(s.r == Approx(std::sqrt(2.0)));
    CHECK(s.theta == Approx(kPi / 4));
    CHECK(s.phi == 0.0);

    s = rect_to_msph({1, 0, 0}, deg2rad(15));
    CHECK(s.phi == Approx(deg2rad(15)));

    // RX at (3, 0, -8) with a 15 degree tilt.
    s = rect_to_msph({3, 0, -8}, deg2rad(15));
    CHECK(s.r == Approx(std::sqrt(73.0)).epsilon(1e-14));
    CHECK(s.theta == 0.0);
    CHECK(rad2deg(s.phi) == Approx(-54.44395478).epsilon(1e-9));
  }

  TEST_CASE("rect_to_msph rejects the origin and points behind the array") {
    CHECK_THROWS_AS(rect_to_msph({0, 0, 0}, 0.0), GeometryError);
    CHECK_THROWS_AS(rect_to_msph({-1, 0, 0}, 0.0), GeometryError);
    CHECK_THROWS_AS(rect_to_msph({0, 1, 0}, 0.0), GeometryError);
  }

  TEST_CASE("uav_plane_to_rect reference points") {
    UavPlaneSpec plane;  // d = 1, beta = 160 deg, no tilt
    auto p = uav_plane_to_rect({0, 0}, plane);
    CHECK(p.x == 1.0);
    CHECK(p.y == 0.0);
    CHECK(p.z == 0.0);

    p = uav_plane_to_rect({0, 1}, plane);
    CHECK(p.x == 1.0);
    CHECK(p.y == Approx(std::tan(deg2rad(80))));
    CHECK(p.z == 0.0);

    auto a = msph_angles_of_plane_coord({1, 0}, plane);
    CHECK(a.theta == 0.0);
    CHECK(rad2deg(a.phi) == Approx(80.0));
    a = msph_angles_of_plane_coord({0, 0}, UavPlaneSpec{1.0, deg2rad(160), deg2rad(15)});
    CHECK(a.theta == 0.0);
    CHECK(a.phi == Approx(0.0).epsilon(1e-15));
  }

  TEST_CASE("tilted plane point satisfies the plane equation and angle bounds") {
    const UavPlaneSpec plane{1.0, deg2rad(160), deg2rad(15)};
    const UavPlaneCoord c{0.5, -0.25};
    const auto p = uav_plane_to_rect(c, plane);
    const double t = plane.theta_tilt;
    CHECK(p.x * std::cos(t) - p.z * std::sin(t) == Approx(plane.d).epsilon(1e-12));
    const auto a = msph_angles_of_plane_coord(c, plane);
    CHECK(std::abs(a.theta) <= plane.beta / 2);
    CHECK(std::abs(a.phi) <= plane.beta / 2);
    const auto s = rect_to_msph(p, t);
    CHECK(a.theta == s.theta);
    CHECK(a.phi == s.phi);
  }

  TEST_CASE("plane membership and angle bounds over a dense grid") {
    for (double tilt_deg : {0.0, 15.0, -20.0}) {
      const UavPlaneSpec plane{1.3, deg2rad(150), deg2rad(tilt_deg)};
      int inside = 0;
      for (int a = 0; a <= 60; ++a)
        for (int b = 0; b <= 60; ++b) {
          const UavPlaneCoord c{-1.0 + a / 30.0, -1.0 + b / 30.0};
          const auto p = uav_plane_to_rect(c, plane);
          const double t = plane.theta_tilt;
          CHECK(p.x * std::cos(t) - p.z * std::sin(t) == Approx(plane.d).epsilon(1e-12));
          if (!in_plane_region(c, plane)) {
            // Only a tilted plane can leave the front half-space.
            CHECK(tilt_deg != 0.0);
            continue;
          }
          ++inside;
          const auto ang = msph_angles_of_plane_coord(c, plane);
          CHECK(std::abs(ang.theta) <= plane.beta / 2 + 1e-12);
          CHECK(std::abs(ang.phi) <= plane.beta / 2 + 1e-12);
        }
      if (tilt_deg == 0.0) CHECK(inside == 61 * 61);
    }
  }

  TEST_CASE("angles are monotone in the plane coordinates") {
    const UavPlaneSpec plane{1.0, deg2rad(160), deg2rad(15)};
    for (double u : {-0.5, 0.0, 0.6}) {
      double prev = -1e9;
      for (int k = 0; k <= 40; ++k) {
        const auto a = msph_angles_of_plane_coord({u, -1.0 + k / 20.0}, plane);
        CHECK(a.theta > prev);
        prev = a.theta;
      }
    }
    for (double v : {-0.7, 0.0, 0.4}) {
      double prev = -1e9;
      for (int k = 0; k <= 30; ++k) {
        const auto a = msph_angles_of_plane_coord({-0.6 + k / 20.0, v}, plane);
        CHECK(a.phi > prev);
        prev = a.phi;
      }
    }
  }

  TEST_CASE("plane validation") {
    CHECK_THROWS_AS((UavPlaneSpec{0.0, 1.0, 0.0}.validate()), ConfigError);
    CHECK_THROWS_AS((UavPlaneSpec{1.0, kPi, 0.0}.validate()), ConfigError);
    CHECK_NOTHROW(UavPlaneSpec{}.validate());
  }
}
