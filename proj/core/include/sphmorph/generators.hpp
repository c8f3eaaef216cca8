// Copyright 2026 The sphmorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numbers>

#include "sphmorph/sphere.hpp"
#include "sphmorph/triangulation.hpp"

namespace sphmorph {

enum class Pose { Standard, RotatedX90, Custom };

struct TwistParams {
  double theta = 0.0;  // radians, |theta| < pi
  Pose pose = Pose::Standard;
  Rotation custom;     // used when pose == Custom
};

/// Twist at which the projected Schoenhardt triangulation stops being sinkable.
inline constexpr double kSchonhardtCritical = std::numbers::pi / 6.0;

/// Twisted triangular prism: bottom triangle at z = -1, top at z = +1, top
/// rotated by theta relative to the bottom. theta = 0 is the untwisted prism.
/// Each side square is split by the diagonal that lengthens under positive
/// twist, so theta > 0 buckles inward. Throws std::invalid_argument on a
/// degenerate or invalid result.
SphereTriangulation schonhardt(const TwistParams& params, Tolerance tol = {});
inline SphereTriangulation schonhardt(double theta) { TwistParams p; p.theta = theta; return schonhardt(p); }

/// Jessen's orthogonal icosahedron sits at this twist of the shaddock family.
inline constexpr double kJessenAngle = std::numbers::pi / 6.0;
/// Twist giving the regular icosahedron (negative: convex side).
double regular_icosahedron_angle();
/// Largest |theta| accepted by shaddock().
inline constexpr double kShaddockMaxTwist = std::numbers::pi / 3.0;

/// Vertex scale t of the (0, +-1, +-t) icosahedron realizing twist theta.
double shaddock_parameter(double theta);

/// Six-beaked shaddock: cuboctahedron with triangulated squares, each
/// triangular facet twisted by theta. In the standard pose one pair of
/// triangular facets is normal to the z-axis.
SphereTriangulation shaddock(double theta, Pose pose = Pose::Standard, const Rotation& custom = {},
                             Tolerance tol = {});

/// Convex hull of n uniform random unit vectors containing the origin.
SphereTriangulation random_coherent(int n, std::uint64_t seed);

struct FlipSchedule {
  int convex_iterations = 10000;
  int lengthening_iterations = 10000;
};

/// Random hull followed by random convex flips, then random flips that
/// lengthen the flipped edge.
SphereTriangulation ugly_flip_family(int n, std::uint64_t seed, FlipSchedule schedule = {});

/// Belt of 2m sheared triangles around the equator (latitudes +-eps) whose
/// dual edges form a directed cycle for poles near the z-axis, completed by
/// coning each polar cap to an apex near the pole. n = 2m + 2.
SphereTriangulation equatorial_rotor(int m, double eps);

}  // namespace sphmorph
