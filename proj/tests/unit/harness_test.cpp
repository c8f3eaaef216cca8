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


#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <sstream>

#include "sphmorph/generators.hpp"
#include "sphmorph/io.hpp"
#include "sphmorph/morph.hpp"
#include "sphmorph/survey.hpp"
#include "sphmorph/svg.hpp"
#include "support.hpp"

namespace sphmorph {
namespace {

using testing_support::generic_rotation;
using testing_support::octahedron;

int count(const std::string& s, const std::string& needle) {
  int c = 0;
  for (std::size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++c;
  return c;
}

TEST(Io, TriangulationRoundTrip) {
  const auto t = ugly_flip_family(30, 4, {300, 300});
  const auto back = parse_triangulation(triangulation_to_json(t));
  EXPECT_EQ(back.vertices(), t.vertices());
  EXPECT_EQ(back.faces(), t.faces());
  EXPECT_TRUE(validate(back).ok());
  std::istringstream in(triangulation_to_json(t));
  EXPECT_EQ(read_triangulation(in).faces(), t.faces());
}

TEST(Io, SyntaxErrorHasLineAndColumn) {
  try {
    parse_triangulation("{\"version\":1,\n\"vertices\":[[1,0,0],\n  [0,1,0]\n  [0,0,1]]}");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 4);
    EXPECT_GT(e.column, 0);
  }
}

TEST(Io, StructuralErrors) {
  EXPECT_THROW(parse_triangulation("[1,2]"), ParseError);
  EXPECT_THROW(parse_triangulation(R"({"version":2,"vertices":[],"faces":[]})"), ParseError);
  EXPECT_THROW(parse_triangulation(R"({"version":1,"vertices":[[1,0,0]],"faces":[[0,1,2]]})"), ParseError);
  EXPECT_THROW(parse_triangulation(R"({"version":1,"vertices":[[1,0]],"faces":[]})"), ParseError);
}

TEST(Io, MorphDocument) {
  PipelineOptions o;
  o.frames = 5;
  const auto t0 = schonhardt(0.3), t1 = schonhardt(-0.3);
  const auto plan = full_pipeline(t0, t1, o);
  const auto stages = parse_morph(morph_to_json(plan));
  ASSERT_EQ(stages.size(), plan.stages.size());
  for (std::size_t s = 0; s < stages.size(); ++s) {
    EXPECT_EQ(stages[s].kind, to_string(plan.stages[s].kind));
    EXPECT_EQ(stages[s].frames.size(), 5u);
  }
  EXPECT_NEAR((stages.front().frames.front()[0].normalized() - t0.vertex(0).normalized()).norm(), 0, 1e-8);
}

TEST(Survey, CoherentAlwaysShellable) {
  const auto rep = direction_survey(random_coherent(40, 6), 200, 3);
  EXPECT_EQ(rep.directions, 200);
  EXPECT_DOUBLE_EQ(rep.shellable_frac, 1.0);
  EXPECT_DOUBLE_EQ(rep.sinkable_frac, 1.0);
  EXPECT_TRUE(rep.shellable_subset_of_sinkable());
}

TEST(Survey, SchonhardtPartlyShellable) {
  const auto rep = direction_survey(schonhardt(0.4), 500, 1);
  EXPECT_GT(rep.shellable_frac, 0.0);
  EXPECT_LT(rep.shellable_frac, 1.0);
  EXPECT_TRUE(rep.shellable_subset_of_sinkable());
  EXPECT_NEAR(rep.sinkable_frac + rep.unsinkable_frac + rep.singular_frac, 1.0, 1e-12);
}

TEST(Survey, DeterministicAcrossThreadCounts) {
  const auto t = ugly_flip_family(50, 2, {1000, 1000});
  const auto a = direction_survey(t, 100, 9, {}, 1);
  const auto b = direction_survey(t, 100, 9, {}, 4);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].direction, b.records[i].direction);
    EXPECT_EQ(a.records[i].shellable, b.records[i].shellable);
    EXPECT_EQ(a.records[i].sink, b.records[i].sink);
  }
  EXPECT_EQ(a.shellable_frac, b.shellable_frac);
}

TEST(Survey, DegenerateDirectionsAreResampled) {
  // The octahedron at its standard pose has vertices on the axes, but random
  // directions are generic almost surely; every record must be usable.
  const auto rep = direction_survey(octahedron(), 300, 5);
  EXPECT_EQ(static_cast<int>(rep.records.size()), 300);
  EXPECT_GE(rep.degenerate, 0);
  EXPECT_DOUBLE_EQ(rep.shellable_frac, 1.0);
}

TEST(Family, EmptyHasHeaderOnly) {
  FamilyOptions o;
  o.instances = 0;
  EXPECT_EQ(family_experiment(o), "seed,n,shellable_frac,sinkable_frac,singular_frac\n");
}

TEST(Family, DeterministicAndWellFormed) {
  FamilyOptions o;
  o.instances = 3;
  o.directions = 40;
  o.n = 30;
  o.seed = 11;
  const std::string a = family_experiment(o), b = family_experiment(o);
  EXPECT_EQ(a, b);
  EXPECT_EQ(count(a, "\n"), 4);
  const std::regex row(R"(\d+,30,[01]\.\d{6},[01]\.\d{6},[01]\.\d{6})");
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) EXPECT_TRUE(std::regex_match(line, row)) << line;
}

TEST(Family, UnknownFamilyRejected) {
  FamilyOptions o;
  o.family = "other";
  EXPECT_THROW(family_experiment(o), std::invalid_argument);
}

TEST(Svg, OctahedronStereographicCounts) {
  const auto d = render_svg(octahedron(generic_rotation()));
  EXPECT_TRUE(d.errors.empty());
  EXPECT_EQ(d.vertices_drawn, 6);
  EXPECT_EQ(d.edges_drawn, 12);
  EXPECT_EQ(count(d.svg, "<circle"), 6);
  EXPECT_EQ(count(d.svg, "<polyline"), 12);
}

TEST(Svg, GnomonicEdgesAreStraight) {
  // A small triangulation around the south pole, sunk entirely into z < 0.
  auto v = random_coherent(12, 3).vertices();
  for (auto& p : v) p = SpherePoint{0.3 * p.x, 0.3 * p.y, -1.0};
  const auto t = random_coherent(12, 3).with_vertices(v);
  for (const Edge& e : t.edges()) {
    const auto samples = geodesic_samples(t.vertex(e.a), t.vertex(e.b), 32);
    ASSERT_EQ(samples.size(), 32u);
    const PlanarPoint a = gnomonic_project(samples.front()), b = gnomonic_project(samples.back());
    const double chord = std::hypot(b.u - a.u, b.v - a.v);
    for (const auto& s : samples) {
      const PlanarPoint q = gnomonic_project(s);
      const double dist = std::abs((b.u - a.u) * (q.v - a.v) - (b.v - a.v) * (q.u - a.u)) / chord;
      EXPECT_LT(dist, 1e-6 * chord);
    }
  }
  SvgOptions o;
  o.projection = Projection::Gnomonic;
  const auto d = render_svg(t, o);
  EXPECT_TRUE(d.errors.empty());
  EXPECT_EQ(d.edges_drawn, static_cast<int>(t.edges().size()));
}

TEST(Svg, GnomonicDomainErrorsPerElement) {
  SvgOptions o;
  o.projection = Projection::Gnomonic;
  const auto d = render_svg(octahedron(generic_rotation()), o);
  EXPECT_FALSE(d.errors.empty());
  EXPECT_LT(d.vertices_drawn, 6);
  EXPECT_EQ(d.vertices_drawn + static_cast<int>(std::count_if(d.errors.begin(), d.errors.end(),
                                                              [](const SvgDomainError& e) { return !e.is_edge; })),
            6);
}

TEST(Svg, MorphFrameCount) {
  PipelineOptions o;
  o.frames = 4;
  const auto plan = full_pipeline(shaddock(kJessenAngle), shaddock(regular_icosahedron_angle()), o);
  const auto docs = render_morph_svg(plan);
  EXPECT_EQ(static_cast<int>(docs.size()), plan.total_frames());
  EXPECT_EQ(static_cast<int>(docs.size()), 4 * static_cast<int>(plan.stages.size()));
}

}  // namespace
}  // namespace sphmorph
