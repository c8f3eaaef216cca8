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
#include <string>
#include <vector>

#include "sphmorph/sinking.hpp"
#include "sphmorph/triangulation.hpp"

namespace sphmorph {

struct DirectionRecord {
  SpherePoint direction;
  bool shellable = false;
  SinkVerdict sink = SinkVerdict::Singular;
  int resamples = 0;  // degenerate draws replaced before this one
};

struct SurveyReport {
  std::string id;
  std::uint64_t seed = 0;
  int directions = 0;
  int degenerate = 0;  // total resampled draws
  double shellable_frac = 0.0;
  double sinkable_frac = 0.0;
  double unsinkable_frac = 0.0;
  double singular_frac = 0.0;
  std::vector<DirectionRecord> records;  // in sub-seed order
  double seconds = 0.0;

  /// Every shellable direction is also sinkable.
  bool shellable_subset_of_sinkable() const;
  /// 1-based index of the first shellable / sinkable record, 0 if none.
  int first_shellable() const;
  int first_sinkable() const;
};

/// Sub-seed of direction i; directions do not depend on evaluation order.
std::uint64_t direction_seed(std::uint64_t seed, std::uint64_t i);

/// Tests k random directions for shellability and sinkability. Degenerate
/// directions are redrawn from the same sub-seed stream and counted.
/// `threads` = 0 uses the hardware concurrency.
SurveyReport direction_survey(const SphereTriangulation& t, int k, std::uint64_t seed, Tolerance tol = {},
                              unsigned threads = 0);

struct FamilyOptions {
  std::string family = "flip";
  int instances = 20;
  int directions = 500;
  int n = 100;
  std::uint64_t seed = 1;
  Tolerance tol{};
  unsigned threads = 0;
};

/// Survey over generated instances; one CSV row per instance under the header
/// "seed,n,shellable_frac,sinkable_frac,singular_frac". Instance i uses seed
/// `seed + i`.
std::string family_experiment(const FamilyOptions& opts, std::vector<SurveyReport>* reports = nullptr);

}  // namespace sphmorph
