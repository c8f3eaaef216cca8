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


#include "sphmorph/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sphmorph/generators.hpp"
#include "sphmorph/shelling.hpp"

namespace sphmorph {

bool SurveyReport::shellable_subset_of_sinkable() const {
  return std::all_of(records.begin(), records.end(),
                     [](const DirectionRecord& r) { return !r.shellable || r.sink == SinkVerdict::Sinkable; });
}

int SurveyReport::first_shellable() const {
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].shellable) return static_cast<int>(i) + 1;
  return 0;
}

int SurveyReport::first_sinkable() const {
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].sink == SinkVerdict::Sinkable) return static_cast<int>(i) + 1;
  return 0;
}

std::uint64_t direction_seed(std::uint64_t seed, std::uint64_t i) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

DirectionRecord evaluate_direction(const SphereTriangulation& t, std::uint64_t sub_seed, Tolerance tol) {
  DirectionSampler sampler(sub_seed);
  DirectionRecord rec;
  for (;; ++rec.resamples) {
    if (rec.resamples > 1000) throw std::runtime_error("direction survey: no generic direction in 1000 draws");
    rec.direction = sampler.next();
    try {
      const FaceClassification fc = classify_faces(t, rec.direction, tol);
      rec.shellable = is_shellable(t, fc, ShellMethod::AcyclicDual);
      rec.sink = is_sinkable(t, rec.direction, tol).verdict;
      return rec;
    } catch (const DegenerateDirection&) {
    }
  }
}

}  // namespace

SurveyReport direction_survey(const SphereTriangulation& t, int k, std::uint64_t seed, Tolerance tol,
                              unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  SurveyReport rep;
  rep.seed = seed;
  rep.directions = std::max(0, k);
  rep.records.resize(rep.directions);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max(1, rep.directions));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < rep.directions;) rep.records[i] = evaluate_direction(t, direction_seed(seed, i), tol);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  int shell = 0, sink = 0, unsink = 0, singular = 0;
  for (const auto& r : rep.records) {
    rep.degenerate += r.resamples;
    shell += r.shellable;
    sink += r.sink == SinkVerdict::Sinkable;
    unsink += r.sink == SinkVerdict::Unsinkable;
    singular += r.sink == SinkVerdict::Singular;
  }
  if (rep.directions > 0) {
    const double k_d = rep.directions;
    rep.shellable_frac = shell / k_d;
    rep.sinkable_frac = sink / k_d;
    rep.unsinkable_frac = unsink / k_d;
    rep.singular_frac = singular / k_d;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string family_experiment(const FamilyOptions& o, std::vector<SurveyReport>* reports) {
  if (o.family != "flip") throw std::invalid_argument("family_experiment: unknown family '" + o.family + "'");
  std::ostringstream csv;
  csv << "seed,n,shellable_frac,sinkable_frac,singular_frac\n";
  for (int i = 0; i < o.instances; ++i) {
    const std::uint64_t s = o.seed + static_cast<std::uint64_t>(i);
    const SphereTriangulation t = ugly_flip_family(o.n, s);
    SurveyReport rep = direction_survey(t, o.directions, s, o.tol, o.threads);
    rep.id = "flip-n" + std::to_string(o.n) + "-s" + std::to_string(s);
    char line[160];
    std::snprintf(line, sizeof line, "%llu,%d,%.6f,%.6f,%.6f\n", static_cast<unsigned long long>(s), o.n,
                  rep.shellable_frac, rep.sinkable_frac, rep.singular_frac);
    csv << line;
    if (reports) reports->push_back(std::move(rep));
  }
  return csv.str();
}

}  // namespace sphmorph
