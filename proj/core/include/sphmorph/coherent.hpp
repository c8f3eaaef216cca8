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
#include <string>

#include "sphmorph/triangulation.hpp"

namespace sphmorph {

class RealizationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True when t is the central projection of a strictly convex polyhedron with
/// these vertex coordinates: every face has vol > 0 and every edge is convex.
bool is_coherent(const SphereTriangulation& t, Tolerance tol = {});

/// Isomorphic coherent triangulation: Tutte embedding of t minus one face,
/// lifted to a convex polyhedron through its equilibrium stress. When that
/// lift is too flat to certify, falls back to the Koebe polyhedron of a
/// circle packing. Throws RealizationFailure if no candidate is certified.
SphereTriangulation coherent_realization(const SphereTriangulation& t, int outer_face = 0);

}  // namespace sphmorph
