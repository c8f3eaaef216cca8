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
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "sphmorph/shelling.hpp"
#include "sphmorph/triangulation.hpp"

namespace sphmorph {

/// Square system in the unknown heights z' of the pole frame (the frame in
/// which the pole is (0,0,1); x and y stay fixed). The first three rows pin
/// the north-face vertices to -1; each remaining row makes one down-face flat.
struct SinkSystem {
  struct Row {
    std::array<int, 3> index{-1, -1, -1};
    std::array<double, 3> coef{0, 0, 0};
    double rhs = 0.0;
    int face = -1;  // source face
    int terms = 0;  // 1 for pinned rows, 3 for face rows
  };

  SpherePoint pole;
  std::shared_ptr<const Topology> topology;
  Rotation frame;                   // takes the pole to (0,0,1)
  std::vector<SpherePoint> points;  // vertices in the pole frame
  FaceClassification classification;
  std::vector<Row> rows;

  int size() const { return static_cast<int>(points.size()); }
  /// Row r evaluated at heights z.
  double evaluate(int r, const std::vector<double>& z) const;
};

/// Linear part of vol in the height column: c_i z_i + c_j z_j + c_k z_k.
std::array<double, 3> height_cofactors(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c);

/// Throws DegenerateDirection when the pole is not generic or the row count
/// differs from n.
SinkSystem build_sink_system(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol = {});

struct Singular {
  double pivot_ratio = 0.0;
};

using SinkSolve = std::variant<std::vector<double>, Singular>;

/// Sparse LU with partial pivoting on row-equilibrated coefficients. Singular
/// when the smallest to largest pivot ratio of U drops below 1e-12 or the
/// residual exceeds 1e-8. The ratio is stored in `pivot_ratio` when given.
SinkSolve solve_sink_system(const SinkSystem& s, double* pivot_ratio = nullptr);

struct FeasibilityReport {
  bool feasible = false;
  double tau = 0.0;               // feasibility slack
  double min_face_vol = 0.0;      // over non-polar faces
  int min_face = -1;
  double max_down_abs = 0.0;      // over down-faces
  double max_height = 0.0;        // largest z'
  double max_north_error = 0.0;   // |z' + 1| on the north face
  bool near_boundary = false;     // some non-down face within tau of flat
};

/// Checks the sinking constraints: north face at -1, every non-polar face
/// nonnegative, every height negative.
FeasibilityReport check_lp_feasible(const SinkSystem& s, const std::vector<double>& z);
FeasibilityReport check_lp_feasible(const SphereTriangulation& t, const SpherePoint& pole,
                                    const std::vector<double>& z, Tolerance tol = {});

/// Back-substitution along a shelling order: north face pinned at -1, each
/// face meeting exactly one unplaced vertex fixes that vertex so the face is
/// flat. Throws std::invalid_argument if the order is not a valid shelling.
std::vector<double> ah_embed(const SphereTriangulation& t, const FaceClassification& fc, const ShellingOrder& order);
std::vector<double> ah_embed(const SphereTriangulation& t, const SpherePoint& pole, const ShellingOrder& order,
                             Tolerance tol = {});

enum class SinkVerdict { Sinkable, Unsinkable, Singular };

const char* to_string(SinkVerdict v);

struct SinkResult {
  SinkVerdict verdict = SinkVerdict::Singular;
  std::vector<double> z;  // heights in the pole frame (empty when Singular)
  FeasibilityReport diagnostics;
  double residual = 0.0;  // relative residual of the solve
  double pivot_ratio = 0.0;  // smallest over largest pivot of the factorization
};

SinkResult is_sinkable(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol = {});

/// Pole-frame coordinates with heights replaced by (1-s) z + s z'.
std::vector<SpherePoint> blend_heights(const std::vector<SpherePoint>& frame_points, const std::vector<double>& z,
                                       double s);

/// Smallest-margin endpoint of the sink morph that is a proper southern
/// triangulation: s* = (s0 + 1) / 2 where s0 is the first s at which no
/// height is positive.
double proper_sink_parameter(const std::vector<SpherePoint>& frame_points, const std::vector<double>& z);

}  // namespace sphmorph
