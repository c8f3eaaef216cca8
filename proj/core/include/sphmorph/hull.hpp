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

#include <stdexcept>
#include <vector>

#include "sphmorph/sphere.hpp"
#include "sphmorph/triangulation.hpp"

namespace sphmorph {

/// Thrown when a point set has no full-dimensional hull, or has points that
/// are not hull vertices.
class DegenerateHull : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orientation of d against the plane (a, b, c): positive when d lies on the
/// side the normal (b-a) x (c-a) points to.
double orient3d(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, const SpherePoint& d);

/// Incremental convex hull (points processed in the given order). Faces are
/// CCW seen from outside. Every input point must be a strict hull vertex;
/// `rel_eps` scales the coplanarity threshold.
std::vector<Face> convex_hull(const std::vector<SpherePoint>& points, double rel_eps = 1e-10);

}  // namespace sphmorph
