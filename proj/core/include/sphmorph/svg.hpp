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

#include <string>
#include <vector>

#include "sphmorph/morph.hpp"
#include "sphmorph/triangulation.hpp"

namespace sphmorph {

enum class Projection { Stereographic, Gnomonic };

struct SvgOptions {
  Projection projection = Projection::Stereographic;
  double size = 800.0;   // width and height in px
  double margin = 20.0;
  int edge_samples = 32; // geodesic samples per edge, endpoints included
  double vertex_radius = 3.0;
  bool vertex_dots = true;
};

/// A vertex or edge that could not be projected (gnomonic needs z < 0,
/// stereographic excludes the north pole). Such elements are left out.
struct SvgDomainError {
  bool is_edge = false;
  int vertex = -1;
  Edge edge{};
  std::string message;
};

struct SvgDocument {
  std::string svg;
  int vertices_drawn = 0;
  int edges_drawn = 0;
  std::vector<SvgDomainError> errors;
};

/// Points along the shorter great-circle arc from a to b (unit-normalized).
std::vector<SpherePoint> geodesic_samples(const SpherePoint& a, const SpherePoint& b, int samples);

SvgDocument render_svg(const SphereTriangulation& t, const SvgOptions& opts = {});

/// One document per frame; stage k contributes `frames` snapshots, so the
/// result has plan.total_frames() entries.
std::vector<SvgDocument> render_morph_svg(const MorphPlan& plan, const SvgOptions& opts = {});

}  // namespace sphmorph
