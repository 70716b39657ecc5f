// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrep/constraints/horn.hpp"
#include "wrep/geometry2d.hpp"

#include <gtest/gtest.h>

namespace wrep {
namespace {

OccupationVector occ(std::vector<double> v) { return OccupationVector::make(std::move(v), 2); }

TEST(Polygon, HullAndClip) {
  auto h = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}});
  EXPECT_EQ(h.size(), 4u);
  EXPECT_NEAR(polygon_area(h), 1.0, 1e-15);
  auto c = clip(h, {{1, 0}, 0.5});
  EXPECT_NEAR(polygon_area(c), 0.5, 1e-15);
  EXPECT_GT(inside_margin(h, {0.5, 0.5}), 0.49);
  EXPECT_LT(inside_margin(h, {1.5, 0.5}), 0);
}

TEST(Sector, PauliSimplexTriangle) {
  auto p = rado_hrep(Permutohedron({1, 1, 0}));
  auto poly = sector_polygon(p);
  // Vertices (1,1), (1,0.5), (2/3,2/3).
  EXPECT_EQ(poly.size(), 3u);
  EXPECT_NEAR(std::abs(polygon_area(poly)), 0.5 * (1.0 / 3.0) * 0.5, 1e-12);
}

TEST(Convexity, PermutohedraAreConvex) {
  EXPECT_TRUE(orbit_convexity_check(rado_hrep(Permutohedron({1, 0.7, 0.3}))));
  EXPECT_TRUE(orbit_convexity_check(rado_hrep(Permutohedron({1, 1, 0}))));
  EXPECT_TRUE(orbit_convexity_check(rado_hrep(Permutohedron(std::vector<double>(3, 2.0 / 3.0)))));
}

TEST(Convexity, AnnulusLikeSetIsNot) {
  // Prefix upper bounds plus a lower bound on λ1 carve out the centre.
  auto h = rado_hrep(Permutohedron({1, 1, 0}));
  h.add({-1, 0, 0}, -0.9, "t:lower");
  EXPECT_FALSE(orbit_convexity_check(h));
}

TEST(Convexity, ThreeReferenceSpectra) {
  EXPECT_TRUE(orbit_convexity_check(lambda_down_hrep(0.7, OccupationVector::uniform(2, 3), 2, 3)));
  EXPECT_FALSE(orbit_convexity_check(lambda_down_hrep(0.7, occ({1, 0.6, 0.4}), 2, 3)));
  EXPECT_FALSE(orbit_convexity_check(lambda_down_hrep(0.7, occ({0.9, 0.9, 0.2}), 2, 3)));
}

TEST(Convexity, RequiresThreeDimensions) {
  EXPECT_THROW(orbit_convexity_check(rado_hrep(Permutohedron({1, 0.5, 0.5, 0}))), CapabilityError);
}

}  // namespace
}  // namespace wrep
