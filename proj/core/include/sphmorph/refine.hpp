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

#include <utility>
#include <vector>

#include "sphmorph/triangulation.hpp"

namespace sphmorph {

/// Result of cutting a triangulation along the longitude through a north-face
/// vertex. Original vertices keep their indices; bend vertices follow them.
struct SeamRefinement {
  SphereTriangulation refined;
  SpherePoint pole;
  int seam_vertex = -1;
  int original_vertices = 0;
  int original_faces = 0;
  /// face_map[f] lists the refined faces covering original face f.
  std::vector<std::vector<int>> face_map;
  /// Each subdivided original edge with its bend vertex, north to south.
  std::vector<std::pair<Edge, int>> bends;
};

/// Splits every edge crossed by the longitude through `v` (a vertex of the
/// north face). The south face splits into two faces, the first face below v
/// into two, and every other crossed face into three. Throws
/// DegenerateDirection when the longitude passes through another vertex or
/// `v` is not on the north face.
SeamRefinement refine_along_seam(const SphereTriangulation& t, const SpherePoint& pole, int v, Tolerance tol = {});

/// The same combinatorial refinement applied to an isomorphic triangulation,
/// with the given bend positions (one per entry of `ref.bends`).
SphereTriangulation refine_like(const SeamRefinement& ref, const SphereTriangulation& other,
                                const std::vector<SpherePoint>& bend_points);

/// Bend positions at the geodesic midpoints of the subdivided edges of `other`.
std::vector<SpherePoint> edge_midpoints(const SeamRefinement& ref, const SphereTriangulation& other);

}  // namespace sphmorph
