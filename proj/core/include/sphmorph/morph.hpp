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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphmorph/planar.hpp"
#include "sphmorph/refine.hpp"
#include "sphmorph/triangulation.hpp"

namespace sphmorph {

class InvalidEndpoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No rotation making the triangulation sinkable was found within budget.
class NoSinkableRotationFound : public std::runtime_error {
 public:
  NoSinkableRotationFound(const std::string& what, std::vector<SpherePoint> attempted)
      : std::runtime_error(what), attempted(std::move(attempted)) {}
  std::vector<SpherePoint> attempted;
};

enum class StageKind { Rotate, Longitudinal, RotatedLongitudinal, PlanarBarycentric };

const char* to_string(StageKind k);

/// One piece of a morph, parametrized by t in [0, 1]. Coordinates are world
/// coordinates. A reversed stage runs its underlying motion backwards.
struct MorphStage {
  StageKind kind = StageKind::Rotate;
  std::shared_ptr<const Topology> topology;
  int frames = 60;
  bool reversed = false;

  /// Rotate: start rotated by angle * t about axis.
  /// Longitudinal: x, y from start; heights interpolate from start to end.
  /// RotatedLongitudinal: straight lines from start to end, parallel to pole.
  std::vector<SpherePoint> start, end;
  SpherePoint axis = kNorthPole;
  double angle = 0.0;
  SpherePoint pole = kNorthPole;
  /// PlanarBarycentric: drawing lifted to z = -1, then mapped by `frame`.
  std::shared_ptr<const PlanarMorph> planar;
  Rotation frame;

  std::vector<SpherePoint> at(double t) const;
  SphereTriangulation triangulation_at(double t) const { return {topology, at(t)}; }
  /// Coordinates at the beginning and end of the stage as traversed.
  std::vector<SpherePoint> first() const { return at(0.0); }
  std::vector<SpherePoint> last() const { return at(1.0); }
  MorphStage reverse() const;
};

MorphStage rotate_stage(const SphereTriangulation& t, const Rotation& r, int frames = 60);
/// x and y are taken from `t`; throws InvalidEndpoint if either end is invalid.
MorphStage longitudinal_stage(const SphereTriangulation& t, const std::vector<double>& z_end, int frames = 60);
MorphStage rotated_longitudinal_stage(const SphereTriangulation& t, const SpherePoint& pole,
                                      const std::vector<double>& shift, int frames = 60);
MorphStage planar_stage(std::shared_ptr<const PlanarMorph> morph, const Rotation& frame, int frames = 60);

/// Keyframes of a longitudinal morph from heights z_start to z_end (x, y
/// from t). Throws InvalidEndpoint if either endpoint fails validation.
std::vector<SphereTriangulation> longitudinal_morph(const SphereTriangulation& t, const std::vector<double>& z_start,
                                                    const std::vector<double>& z_end, int frames);

struct MorphPlan {
  std::vector<MorphStage> stages;
  std::optional<SphereTriangulation> source, target;
  /// Vertices shared by every stage (bend vertices are numbered after them).
  int original_vertices = 0;
  /// Seam refinements used by one-bend plans, in stage order.
  std::vector<SeamRefinement> refinements;
  /// Diagnostics from the pose search, one entry per half.
  std::vector<std::string> notes;

  int total_frames() const;
};

struct PipelineOptions {
  int random_attempts = 64;
  std::uint64_t seed = 1;
  int frames = 60;
  Tolerance tol{};
};

/// Rotate, sink, planar morph to a shared coherent intermediate, and the
/// reverse of the same construction for t1.
MorphPlan full_pipeline(const SphereTriangulation& t0, const SphereTriangulation& t1,
                        const PipelineOptions& opts = {});

/// As full_pipeline, but each side is refined along a seam from `pole` so
/// that no rotation search is needed; bends are the refinement vertices.
MorphPlan one_bend_morph(const SphereTriangulation& t0, const SphereTriangulation& t1, const SpherePoint& pole,
                         const PipelineOptions& opts = {});

struct MorphViolation {
  int stage = -1;
  double t = 0.0;
  int face = -1;
  double vol = 0.0;
  std::string message;
};

struct MorphValidation {
  std::optional<MorphViolation> violation;
  int frames_checked = 0;
  bool ok() const { return !violation.has_value(); }
};

/// Samples every stage at `samples_per_stage` uniform t values and checks
/// each frame, plus stage-specific invariants and endpoint chaining.
MorphValidation validate_morph(const MorphPlan& plan, int samples_per_stage = 50, Tolerance tol = {});

/// Largest number of sub-edges any original edge is drawn with in any stage.
int max_subedges(const MorphPlan& plan);

}  // namespace sphmorph
