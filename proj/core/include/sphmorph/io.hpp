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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphmorph/morph.hpp"
#include "sphmorph/triangulation.hpp"

namespace sphmorph {

/// Malformed input. `line` and `column` are 1-based; 0 when the problem is
/// structural rather than syntactic.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(what), line(line), column(column) {}
  int line;
  int column;
};

/// Triangulation document: {"version":1,"vertices":[[x,y,z],...],
/// "faces":[[i,j,k],...]} with 0-based indices. Extra keys are ignored.
SphereTriangulation parse_triangulation(const std::string& text);
SphereTriangulation read_triangulation(std::istream& in);
std::string triangulation_to_json(const SphereTriangulation& t);

/// One stage of a morph document as stored on disk.
struct StoredStage {
  std::string kind;
  std::vector<Face> faces;
  std::vector<std::vector<SpherePoint>> frames;
};

/// Morph document: {"version":1,"stages":[{"kind":...,"faces":[...],
/// "frames":[[[x,y,z],...],...]},...]}; each stage is sampled at its own
/// frame count, uniformly in t including both ends.
std::string morph_to_json(const MorphPlan& plan);
std::vector<StoredStage> parse_morph(const std::string& text);

}  // namespace sphmorph
