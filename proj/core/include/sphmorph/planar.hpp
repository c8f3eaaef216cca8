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

#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sphmorph/triangulation.hpp"

namespace sphmorph {

class SolveFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Straight-line plane triangulation. Every face except `outer_face` is
/// counterclockwise; the outer face's three vertices bound the drawing.
struct PlanarTriangulation {
  std::shared_ptr<const Topology> topology;
  std::vector<PlanarPoint> points;
  int outer_face = -1;
};

double orient2d(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& c);

/// Smallest inner-face orientation divided by the squared drawing diameter.
double min_relative_orientation(const PlanarTriangulation& p);

/// Central projection of a southern point onto the plane z = -1, with u
/// mirrored so that positively oriented spherical faces become
/// counterclockwise. lift_from_plane is its inverse up to positive scale.
PlanarPoint to_plane(const SpherePoint& p);
SpherePoint lift_from_plane(const PlanarPoint& q);

/// Projects a southern triangulation whose north face is `outer_face`.
/// Throws DomainError if some vertex is not strictly southern.
PlanarTriangulation to_planar(const SphereTriangulation& t, int outer_face);
std::vector<SpherePoint> lift_from_plane(const std::vector<PlanarPoint>& q);

/// Convex-combination weights: for each inner vertex j, pairs (i, lambda)
/// over its neighbors with lambda > 0 summing to 1. Empty for outer vertices.
struct PlanarWeights {
  std::vector<std::vector<std::pair<int, double>>> lambda;
};

/// Mean-value coordinates, clamped below at `floor` and renormalized.
PlanarWeights mean_value_weights(const PlanarTriangulation& p, double floor = 1e-9);

/// Barycentric morph between isomorphic drawings. Weights are interpolated
/// linearly; the outer triangle follows R(t theta)((1-t) I + t U) from the
/// polar decomposition of the affine map between the two outer triangles.
class PlanarMorph {
 public:
  PlanarMorph(PlanarTriangulation p0, PlanarTriangulation p1);

  /// Drawing at t in [0, 1]. The solve residual at the endpoints is blended
  /// out so that t = 0 and t = 1 reproduce the inputs exactly.
  std::vector<PlanarPoint> at(double t) const;

  const PlanarTriangulation& start() const { return p0_; }
  const PlanarTriangulation& end() const { return p1_; }
  const PlanarWeights& start_weights() const { return w0_; }
  const PlanarWeights& end_weights() const { return w1_; }

 private:
  std::vector<PlanarPoint> solve(double t) const;
  std::array<PlanarPoint, 3> outer_at(double t) const;

  PlanarTriangulation p0_, p1_;
  PlanarWeights w0_, w1_;
  std::array<int, 3> outer_{};
  // Outer path: x(t) = L(t) (x0 - c0) + (1-t) c0 + t c1.
  double theta_ = 0.0;
  std::array<double, 4> sym_{1, 0, 0, 1};  // U, row-major
  PlanarPoint c0_, c1_;
  std::vector<PlanarPoint> err0_, err1_;
};

/// `frames` uniformly spaced drawings from p0 to p1 (frames >= 2).
std::vector<std::vector<PlanarPoint>> planar_morph_barycentric(const PlanarTriangulation& p0,
                                                               const PlanarTriangulation& p1, int frames);

}  // namespace sphmorph
