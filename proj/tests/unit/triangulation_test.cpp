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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracle.hpp"
#include "sphmorph/generators.hpp"
#include "sphmorph/hull.hpp"
#include "sphmorph/triangulation.hpp"
#include "support.hpp"

namespace sphmorph {
namespace {

using testing_support::generic_rotation;
using testing_support::octahedron;

std::set<std::array<int, 3>> canonical_faces(const SphereTriangulation& t) {
  std::set<std::array<int, 3>> s;
  for (auto f : t.faces()) {
    std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
    s.insert(f);
  }
  return s;
}

TEST(Validate, PerturbedOctahedronIsValid) {
  const auto t = octahedron(generic_rotation());
  EXPECT_TRUE(validate(t).ok()) << validate(t).summary();
  EXPECT_TRUE(testing_support::embedded(t));
  EXPECT_EQ(t.edges().size(), 12u);
}

TEST(Validate, ReversedFaceIsReported) {
  auto faces = octahedron().faces();
  std::swap(faces[2][0], faces[2][1]);
  const SphereTriangulation t(octahedron().vertices(), faces);
  const auto rep = validate(t);
  ASSERT_FALSE(rep.ok());
  EXPECT_TRUE(std::any_of(rep.violations.begin(), rep.violations.end(),
                          [](const Violation& v) { return v.face == 2; }))
      << rep.summary();
}

TEST(Validate, HullOfFourRandomPoints) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const SphereTriangulation t = testing_support::random_tetrahedron(rng);
    EXPECT_EQ(t.num_faces(), 4);
    EXPECT_TRUE(validate(t).ok()) << validate(t).summary();
    EXPECT_TRUE(testing_support::embedded(t));
  }
}

TEST(Validate, AgreesWithAreaOracleOnInvertedVertex) {
  // Push one octahedron vertex through the opposite side: the faces around it fold.
  auto v = octahedron(generic_rotation()).vertices();
  v[0] = -1.0 * v[0] + SpherePoint{0.01, 0.02, 0.03};
  const SphereTriangulation t(v, octahedron().faces());
  EXPECT_EQ(validate(t).ok(), testing_support::embedded(t));
  EXPECT_FALSE(validate(t).ok());
}

TEST(Validate, SingleEvertedFaceIsAllowed) {
  // Three vertices just north of the equator and one at the top: the bottom
  // face covers more than a hemisphere and has negative vol.
  std::vector<SpherePoint> v;
  for (int k = 0; k < 3; ++k) v.push_back({std::cos(2.1 * k), std::sin(2.1 * k), 0.1});
  v.push_back({0.01, 0.02, 1.0});
  const SphereTriangulation t(v, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}, {0, 2, 1}});
  EXPECT_LT(t.face_vol(3), 0.0);
  EXPECT_TRUE(validate(t).ok()) << validate(t).summary();
  EXPECT_TRUE(testing_support::embedded(t));
  EXPECT_GT(face_area(t, 3), 2 * std::numbers::pi);
}

TEST(Validate, RejectsWrongCounts) {
  const SphereTriangulation t({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2}, {0, 2, 1}});
  EXPECT_FALSE(validate(t).ok());
}

TEST(Classify, OctahedronLabels) {
  const auto t = octahedron(generic_rotation());
  const auto fc = classify_faces(t, kNorthPole);
  EXPECT_EQ(fc.count(FaceLabel::North), 1);
  EXPECT_EQ(fc.count(FaceLabel::South), 1);
  EXPECT_EQ(fc.count(FaceLabel::Down), t.num_vertices() - 3);
  EXPECT_EQ(fc.count(FaceLabel::Up), t.num_vertices() - 3);
  // The north face contains the pole.
  const Face& nf = t.face(fc.north_face);
  for (int k = 0; k < 3; ++k) EXPECT_GT(vol(kNorthPole, t.vertex(nf[k]), t.vertex(nf[(k + 1) % 3])), 0);
  EXPECT_TRUE(face_contains(t, fc.north_face, kNorthPole));
  EXPECT_TRUE(face_contains(t, fc.south_face, kSouthPole));
}

TEST(Classify, DualDirectionsMatchDeterminantRule) {
  const auto t = random_coherent(40, 9);
  std::mt19937_64 rng(1);
  const auto pole = testing_support::point(oracle::random_unit(rng));
  const auto fc = classify_faces(t, pole);
  for (int f = 0; f < t.num_faces(); ++f) {
    for (int k = 0; k < 3; ++k) {
      const double d = vol(pole, t.vertex(t.face(f)[k]), t.vertex(t.face(f)[(k + 1) % 3]));
      EXPECT_EQ(fc.dual_dir[f][k], d > 0 ? 1 : -1) << "face " << f << " edge " << k;
    }
  }
  // Every vertex off the north face is the apex of exactly one down-face.
  std::vector<int> apexes(t.num_vertices(), 0);
  for (int f = 0; f < t.num_faces(); ++f)
    if (fc.labels[f] == FaceLabel::Down) ++apexes[fc.apex[f]];
  const Face& nf = t.face(fc.north_face);
  for (int v = 0; v < t.num_vertices(); ++v) {
    const bool on_north = std::find(nf.begin(), nf.end(), v) != nf.end();
    EXPECT_EQ(apexes[v], on_north ? 0 : 1);
  }
}

TEST(Classify, DegeneratePoleThrows) {
  EXPECT_THROW(classify_faces(octahedron(), kNorthPole), DegenerateDirection);
}

TEST(Genericity, SharedLongitudeReported) {
  auto v = octahedron(generic_rotation()).vertices();
  v[1] = SpherePoint{v[0].x * 0.5, v[0].y * 0.5, v[1].z};  // same longitude as vertex 0
  const SphereTriangulation t(v, octahedron().faces());
  EXPECT_FALSE(genericity(t, kNorthPole).shared_longitudes.empty());
}

TEST(Genericity, OctahedronWithPolarVertices) {
  const auto rep = genericity(octahedron(), kNorthPole);
  EXPECT_FALSE(rep.generic());
  EXPECT_EQ(rep.vertices_at_pole.size(), 2u);
}

TEST(Genericity, RandomHullsAreGeneric) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const auto t = random_coherent(12, s);
    EXPECT_TRUE(genericity(t, kNorthPole).generic()) << "seed " << s;
  }
}

TEST(Flip, FlipBackRestoresFaces) {
  const auto t = random_coherent(30, 2);
  int flipped = 0;
  for (const Edge& e : t.edges()) {
    const auto r = flip_edge(t, e.a, e.b);
    if (!std::holds_alternative<SphereTriangulation>(r)) continue;
    const auto& t2 = std::get<SphereTriangulation>(r);
    EXPECT_FALSE(t2.topology().has_edge(e.a, e.b));
    EXPECT_TRUE(validate(t2).ok());
    // The new edge joins the two apexes; flipping it restores the face set.
    const Edge ne = [&] {
      for (const Edge& f : t2.edges())
        if (!t.topology().has_edge(f.a, f.b)) return f;
      return Edge{};
    }();
    const auto back = flip_edge(t2, ne.a, ne.b);
    ASSERT_TRUE(std::holds_alternative<SphereTriangulation>(back));
    EXPECT_EQ(canonical_faces(std::get<SphereTriangulation>(back)), canonical_faces(t));
    if (++flipped == 10) break;
  }
  EXPECT_EQ(flipped, 10);
}

TEST(Flip, TetrahedronIsNotFlippable) {
  std::mt19937_64 rng(8);
  const SphereTriangulation t = testing_support::random_tetrahedron(rng);
  for (const Edge& e : t.edges()) EXPECT_TRUE(std::holds_alternative<NotFlippable>(flip_edge(t, e.a, e.b)));
}

TEST(Topology, NeighborsAreCounterclockwiseFans) {
  const auto t = octahedron(generic_rotation());
  for (int v = 0; v < t.num_vertices(); ++v) {
    const auto nb = t.topology().neighbors_ccw(v);
    ASSERT_EQ(nb.size(), 4u);
    for (std::size_t k = 0; k < nb.size(); ++k)
      EXPECT_GE(t.topology().face_left_of(nb[k], nb[(k + 1) % nb.size()]), 0);
  }
}

}  // namespace
}  // namespace sphmorph
