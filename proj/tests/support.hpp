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

#include <random>
#include <vector>

#include "oracle.hpp"
#include "sphmorph/hull.hpp"
#include "sphmorph/sphere.hpp"
#include "sphmorph/triangulation.hpp"

namespace testing_support {

inline oracle::Vec vec(const sphmorph::SpherePoint& p) { return {p.x, p.y, p.z}; }
inline sphmorph::SpherePoint point(const oracle::Vec& v) { return {v[0], v[1], v[2]}; }

inline std::vector<oracle::Vec> vecs(const std::vector<sphmorph::SpherePoint>& ps) {
  std::vector<oracle::Vec> out;
  for (const auto& p : ps) out.push_back(vec(p));
  return out;
}
inline std::vector<oracle::Vec> vecs(const sphmorph::SphereTriangulation& t) { return vecs(t.vertices()); }
inline std::vector<oracle::Tri> tris(const sphmorph::SphereTriangulation& t) {
  return {t.faces().begin(), t.faces().end()};
}

inline bool embedded(const sphmorph::SphereTriangulation& t) { return oracle::embedded(vecs(t), tris(t)); }

/// Regular octahedron with CCW faces, optionally moved off the coordinate axes.
inline sphmorph::SphereTriangulation octahedron(const sphmorph::Rotation& r = {}) {
  std::vector<sphmorph::SpherePoint> v{{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (auto& p : v) p = r(p);
  std::vector<sphmorph::Face> f{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4},
                                {1, 0, 5}, {2, 1, 5}, {3, 2, 5}, {0, 3, 5}};
  return {v, f};
}

/// A fixed generic rotation, so that no vertex or edge sits on a pole or longitude.
inline sphmorph::Rotation generic_rotation() {
  return sphmorph::Rotation::about_axis({0.3, -0.7, 0.45}, 0.83);
}

/// Hull of four random unit vectors, redrawn until it contains the origin.
inline sphmorph::SphereTriangulation random_tetrahedron(std::mt19937_64& rng) {
  for (;;) {
    std::vector<sphmorph::SpherePoint> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(point(oracle::random_unit(rng)));
    const sphmorph::SphereTriangulation t(pts, sphmorph::convex_hull(pts));
    bool around_origin = true;
    for (int f = 0; f < 4; ++f) around_origin = around_origin && t.face_vol(f) > 0;
    if (around_origin) return t;
  }
}

}  // namespace testing_support
