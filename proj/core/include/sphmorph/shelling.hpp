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

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sphmorph/triangulation.hpp"

namespace sphmorph {

enum class ViewKind {
  DownDual,        // faces; f -> g when f is due north of g across a shared edge
  OrientedPrimal,  // vertices; i -> j when j is east of i
  LegGraph,        // vertices; legs of down-faces, directed toward the apex
};

struct DirectedView {
  ViewKind kind;
  SpherePoint pole;
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> adjacency() const;
};

DirectedView build_view(const SphereTriangulation& t, const FaceClassification& fc, ViewKind kind);
DirectedView build_view(const SphereTriangulation& t, const SpherePoint& pole, ViewKind kind, Tolerance tol = {});

bool has_directed_cycle(const DirectedView& g);
bool is_strongly_connected(const DirectedView& g);
/// Nodes reachable from any of `sources`.
std::vector<char> reachable_from(const DirectedView& g, const std::vector<int>& sources);

/// The four equivalent shellability tests.
enum class ShellMethod {
  AcyclicDual,        // the dual graph has no directed cycle
  StronglyConnected,  // the east-oriented primal graph is strongly connected
  PolarPaths,         // east-oriented paths join the polar faces both ways
  AcyclicLegs,        // the leg graph has no directed cycle
};

inline constexpr ShellMethod kAllShellMethods[] = {ShellMethod::AcyclicDual, ShellMethod::StronglyConnected,
                                                   ShellMethod::PolarPaths, ShellMethod::AcyclicLegs};

const char* to_string(ShellMethod m);

bool is_shellable(const SphereTriangulation& t, const FaceClassification& fc,
                  ShellMethod method = ShellMethod::AcyclicDual);
/// Throws DegenerateDirection for non-generic poles.
bool is_shellable(const SphereTriangulation& t, const SpherePoint& pole,
                  ShellMethod method = ShellMethod::AcyclicDual, Tolerance tol = {});

class NotShellable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Face permutation; the first entry is the north face.
using ShellingOrder = std::vector<int>;

/// Topological order of the dual graph, north face first. Throws NotShellable.
ShellingOrder shelling_order(const SphereTriangulation& t, const FaceClassification& fc);
ShellingOrder shelling_order(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol = {});

/// True when every face is preceded by all of its dual in-neighbors.
bool is_valid_shelling_order(const SphereTriangulation& t, const FaceClassification& fc,
                             const ShellingOrder& order);

struct ShellSearchStats {
  std::size_t circles = 0;
  std::size_t candidates = 0;
  std::size_t tested = 0;
  std::size_t degenerate = 0;
};

/// One sample pole per cell corner of the arrangement of edge great circles.
std::vector<SpherePoint> shelling_candidates(const SphereTriangulation& t, Tolerance tol = {});

/// Searches the edge-circle arrangement for a pole from which t is
/// longitudinally shellable; nullopt when no cell works.
std::optional<SpherePoint> find_shelling_direction(const SphereTriangulation& t, Tolerance tol = {},
                                                   ShellSearchStats* stats = nullptr);

/// p lies in the open hemisphere left of the great circle through i -> j.
bool dart_hemisphere_contains(const SphereTriangulation& t, int i, int j, const SpherePoint& p,
                              Tolerance tol = {});

}  // namespace sphmorph
