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

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sphmorph/sphere.hpp"

namespace sphmorph {

using Face = std::array<int, 3>;

/// Undirected edge, stored with a < b.
struct Edge {
  int a = -1;
  int b = -1;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int i, int j) { return i < j ? Edge{i, j} : Edge{j, i}; }

/// Raised when a pole is not generic for a triangulation: a needed
/// determinant sign is zero, or the face classification is not consistent.
class DegenerateDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by constructors and loaders for structurally unusable input.
class InvalidTriangulation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  TooFewVertices,
  IndexOutOfRange,
  RepeatedVertex,
  FaceCount,
  EdgeCount,
  DuplicateDart,
  UnpairedDart,
  DisconnectedDual,
  NonManifoldVertex,
  NonPositiveFace,
  MultipleNonPositiveFaces,
  AreaMismatch,
};

struct Violation {
  ViolationKind kind;
  int face = -1;
  double value = 0.0;
  std::string message;
};

/// Combinatorial tables derived from a face list. Shared (immutable) between
/// triangulations that differ only in vertex coordinates.
class Topology {
 public:
  Topology(int num_vertices, std::vector<Face> faces);

  int num_vertices() const { return n_; }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Face having dart i->j on its boundary (i.e. to the left of i->j), or -1.
  int face_left_of(int i, int j) const;
  /// Face across local edge k = (f[k], f[k+1]) of face f, or -1.
  int adjacent_face(int f, int k) const { return adjacent_[f][k]; }
  bool has_edge(int i, int j) const { return face_left_of(i, j) >= 0 || face_left_of(j, i) >= 0; }
  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }
  /// Neighbors of v in counterclockwise order (seen from outside). Empty
  /// when the star of v is not a closed fan.
  std::vector<int> neighbors_ccw(int v) const;

  /// Structural problems found while building the tables.
  const std::vector<Violation>& problems() const { return problems_; }

 private:
  int n_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<std::pair<std::uint64_t, int>> darts_;  // sorted (key, face)
  std::vector<std::array<int, 3>> adjacent_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<Violation> problems_;
};

/// A spherical triangulation: vertex coordinates (homogeneous, unnormalized)
/// plus CCW face triples. Immutable after construction.
class SphereTriangulation {
 public:
  SphereTriangulation(std::vector<SpherePoint> vertices, std::vector<Face> faces);
  SphereTriangulation(std::shared_ptr<const Topology> topology, std::vector<SpherePoint> vertices);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_faces() const { return topology_->num_faces(); }
  const std::vector<SpherePoint>& vertices() const { return vertices_; }
  const SpherePoint& vertex(int i) const { return vertices_[i]; }
  const std::vector<Face>& faces() const { return topology_->faces(); }
  const Face& face(int f) const { return topology_->face(f); }
  const std::vector<Edge>& edges() const { return topology_->edges(); }
  const Topology& topology() const { return *topology_; }
  const std::shared_ptr<const Topology>& topology_ptr() const { return topology_; }

  double face_vol(int f) const;

  /// Same combinatorics, new coordinates.
  SphereTriangulation with_vertices(std::vector<SpherePoint> vertices) const;
  SphereTriangulation rotated(const Rotation& r) const;

 private:
  std::shared_ptr<const Topology> topology_;
  std::vector<SpherePoint> vertices_;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks Euler counts, dart pairing, dual connectivity and the embedding
/// condition: every face has vol > 0 except at most one everted face, and
/// the face areas (everted face counted as 4pi minus its complement) sum to 4pi.
ValidationReport validate(const SphereTriangulation& t, Tolerance tol = {});

/// Spherical area of face f (everted faces have area > 2pi).
double face_area(const SphereTriangulation& t, int f);

/// True when p lies in the interior of face f.
bool face_contains(const SphereTriangulation& t, int f, const SpherePoint& p, Tolerance tol = {});

// ---------------------------------------------------------------------------
// Pole-relative classification

enum class FaceLabel { North, South, Up, Down, Seam };

const char* to_string(FaceLabel label);

/// Per-face labels relative to a pole. Local edge k of face f is the dart
/// (f[k], f[k+1]); `dual_dir[f][k]` is +1 when the dual edge points out of f
/// (f is north of its neighbor across that edge), -1 when it points in, and 0
/// for an edge lying on a longitude (only produced by seam refinements).
struct FaceClassification {
  SpherePoint pole;
  std::vector<FaceLabel> labels;
  std::vector<std::array<int, 3>> dual_dir;
  std::vector<int> apex;       // vertex index; -1 for polar and seam faces
  std::vector<int> base_edge;  // local edge index opposite the apex; -1 otherwise
  std::vector<int> face_above; // f-up(i): down-face with apex i, or the north face
  std::vector<int> face_below; // f-down(i): up-face with apex i, or the south face
  int north_face = -1;
  int south_face = -1;
  bool has_longitudinal_edges = false;

  int count(FaceLabel label) const;
};

/// Classifies faces by dual in-degree. Throws DegenerateDirection when an edge
/// sign is ambiguous (edges on longitudes are accepted only when
/// `allow_longitudinal_edges`), the polar faces are not unique, or (for fully
/// generic input) the down-face/apex correspondence is not a bijection.
FaceClassification classify_faces(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol = {},
                                  bool allow_longitudinal_edges = false);

struct GenericityReport {
  std::vector<Edge> antipodal_edges;
  std::vector<std::array<int, 3>> coplanar_triples;
  std::vector<std::pair<int, int>> shared_longitudes;
  std::vector<int> vertices_at_pole;
  bool triples_sampled = false;

  bool generic() const {
    return antipodal_edges.empty() && coplanar_triples.empty() && shared_longitudes.empty() &&
           vertices_at_pole.empty();
  }
};

/// Exhaustive genericity check relative to `pole`. The O(n^3) triple scan is
/// replaced by `triple_samples` random triples when that is nonzero.
GenericityReport genericity(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol = {},
                            std::size_t triple_samples = 0, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Edge flips

struct NotFlippable {
  std::string reason;
};

using FlipResult = std::variant<SphereTriangulation, NotFlippable>;

/// Replaces edge ij (faces (i,j,k) and (j,i,l)) by kl when both (i,l,k) and
/// (j,k,l) are positively oriented and kl is not already an edge.
FlipResult flip_edge(const SphereTriangulation& t, int i, int j, Tolerance tol = {});

}  // namespace sphmorph
