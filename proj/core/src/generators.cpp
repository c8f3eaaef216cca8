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

#include "sphmorph/generators.hpp"

#include <random>
#include <stdexcept>
#include <unordered_map>

#include "sphmorph/hull.hpp"

namespace sphmorph {

namespace {

constexpr double kPi = std::numbers::pi;

Rotation pose_rotation(Pose pose, const Rotation& custom, const Rotation& standard) {
  switch (pose) {
    case Pose::Standard: return standard;
    case Pose::RotatedX90: return Rotation::about_axis({1, 0, 0}, kPi / 2) * standard;
    case Pose::Custom: return custom * standard;
  }
  return standard;
}

SphereTriangulation checked(SphereTriangulation t, Tolerance tol, const char* what) {
  const ValidationReport rep = validate(t, tol);
  if (!rep.ok()) throw std::invalid_argument(std::string(what) + ": " + rep.summary());
  return t;
}

}  // namespace

SphereTriangulation schonhardt(const TwistParams& params, Tolerance tol) {
  if (!(std::abs(params.theta) < kPi)) throw std::invalid_argument("schonhardt: |theta| must be < pi");
  std::vector<SpherePoint> v(6);
  for (int i = 0; i < 3; ++i) {
    const double phi = kPi / 2 + 2 * kPi * i / 3;
    v[i] = {std::cos(phi), std::sin(phi), -1.0};                                // bottom b_i
    v[3 + i] = {std::cos(phi + params.theta), std::sin(phi + params.theta), 1.0};  // top t_i
  }
  std::vector<Face> faces{{0, 2, 1}, {3, 4, 5}};
  for (int i = 0; i < 3; ++i) {
    const int b = i, bn = (i + 1) % 3, t = 3 + i, tn = 3 + (i + 1) % 3;
    faces.push_back({b, bn, tn});
    faces.push_back({b, tn, t});
  }
  const Rotation r = pose_rotation(params.pose, params.custom, Rotation::identity());
  for (auto& p : v) p = r(p);
  return checked(SphereTriangulation(std::move(v), std::move(faces)), tol, "schonhardt");
}

double shaddock_parameter(double theta) {
  if (!(std::abs(theta) < kShaddockMaxTwist)) throw std::invalid_argument("shaddock: twist outside (-pi/3, pi/3)");
  const double s3 = std::sqrt(3.0), tn = std::tan(theta);
  return (s3 + tn) / (s3 - tn);
}

double regular_icosahedron_angle() {
  const double t = 2.0 / (1.0 + std::sqrt(5.0));  // 1/phi
  return std::atan(std::sqrt(3.0) * (t - 1.0) / (t + 1.0));
}

namespace {

std::vector<SpherePoint> shaddock_points(double t) {
  std::vector<SpherePoint> v;
  for (double a : {1.0, -1.0})
    for (double b : {t, -t}) {
      v.push_back({0.0, a, b});
      v.push_back({b, 0.0, a});
      v.push_back({a, b, 0.0});
    }
  return v;
}

const std::vector<Face>& shaddock_faces() {
  // The hull below t = 1 keeps the square diagonals that buckle inward for t > 1.
  static const std::vector<Face> faces = convex_hull(shaddock_points(0.8));
  return faces;
}

}  // namespace

SphereTriangulation shaddock(double theta, Pose pose, const Rotation& custom, Tolerance tol) {
  const double t = shaddock_parameter(theta);
  std::vector<SpherePoint> v = shaddock_points(t);
  const Rotation r = pose_rotation(pose, custom, Rotation::pole_to_north({1, 1, 1}));
  for (auto& p : v) p = r(p);
  return checked(SphereTriangulation(std::move(v), shaddock_faces()), tol, "shaddock");
}

SphereTriangulation random_coherent(int n, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("random_coherent: n must be >= 4");
  DirectionSampler sampler(seed);
  for (;;) {
    std::vector<SpherePoint> pts(n);
    for (auto& p : pts) p = sampler.next();
    std::vector<Face> faces;
    try {
      faces = convex_hull(pts);
    } catch (const DegenerateHull&) {
      continue;
    }
    SphereTriangulation t(std::move(pts), std::move(faces));
    bool inside = true;
    for (int f = 0; f < t.num_faces() && inside; ++f) {
      const Face& tri = t.face(f);
      inside = vol_sign(t.vertex(tri[0]), t.vertex(tri[1]), t.vertex(tri[2])) > 0;
    }
    if (inside && validate(t).ok()) return t;
  }
}

namespace {

// Mutable face list with a dart index, used for long flip sequences. Applies
// the same rule as flip_edge.
class FlipMesh {
 public:
  explicit FlipMesh(const SphereTriangulation& t) : v_(t.vertices()), faces_(t.faces()) {
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) index(f);
  }

  int num_darts() const { return 3 * static_cast<int>(faces_.size()); }
  std::pair<int, int> dart(int d) const {
    const Face& t = faces_[d / 3];
    return {t[d % 3], t[(d % 3 + 1) % 3]};
  }

  bool try_flip(int i, int j, bool require_longer) {
    const int f = left(i, j), g = left(j, i);
    if (f < 0 || g < 0) return false;
    const int k = opposite(f, i, j), l = opposite(g, i, j);
    if (k == l || left(k, l) >= 0 || left(l, k) >= 0) return false;
    if (vol_sign(v_[i], v_[l], v_[k]) <= 0 || vol_sign(v_[j], v_[k], v_[l]) <= 0) return false;
    if (require_longer && !(angle_between(v_[k], v_[l]) > angle_between(v_[i], v_[j]))) return false;
    unindex(f);
    unindex(g);
    faces_[f] = {i, l, k};
    faces_[g] = {j, k, l};
    index(f);
    index(g);
    return true;
  }

  SphereTriangulation result() const { return SphereTriangulation(v_, faces_); }

 private:
  static std::uint64_t key(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) | static_cast<std::uint32_t>(j);
  }
  int left(int i, int j) const {
    auto it = darts_.find(key(i, j));
    return it == darts_.end() ? -1 : it->second;
  }
  int opposite(int f, int a, int b) const {
    for (int x : faces_[f])
      if (x != a && x != b) return x;
    return -1;
  }
  void index(int f) {
    const Face& t = faces_[f];
    for (int k = 0; k < 3; ++k) darts_[key(t[k], t[(k + 1) % 3])] = f;
  }
  void unindex(int f) {
    const Face& t = faces_[f];
    for (int k = 0; k < 3; ++k) darts_.erase(key(t[k], t[(k + 1) % 3]));
  }

  std::vector<SpherePoint> v_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> darts_;
};

}  // namespace

SphereTriangulation ugly_flip_family(int n, std::uint64_t seed, FlipSchedule schedule) {
  SphereTriangulation base = random_coherent(n, seed);
  if (schedule.convex_iterations <= 0 && schedule.lengthening_iterations <= 0) return base;
  FlipMesh mesh(base);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> pick(0, mesh.num_darts() - 1);
  // A uniform dart is a uniform edge: each edge owns exactly two darts.
  for (int it = 0; it < schedule.convex_iterations; ++it) {
    auto [i, j] = mesh.dart(pick(rng));
    mesh.try_flip(i, j, false);
  }
  for (int it = 0; it < schedule.lengthening_iterations; ++it) {
    auto [i, j] = mesh.dart(pick(rng));
    mesh.try_flip(i, j, true);
  }
  return mesh.result();
}

SphereTriangulation equatorial_rotor(int m, double eps) {
  if (m < 8) throw std::invalid_argument("equatorial_rotor: m must be >= 8");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("equatorial_rotor: eps must lie in (0, 0.5)");
  const double step = 2 * kPi / m;
  const double shift = 1.5 * step;  // a shear of more than one step orients the belt's dual edges into a cycle
  std::vector<SpherePoint> v(2 * m + 2);
  for (int k = 0; k < m; ++k) {
    const double a = k * step, b = k * step + shift;
    v[k] = {std::cos(a) * std::cos(eps), std::sin(a) * std::cos(eps), std::sin(eps)};
    v[m + k] = {std::cos(b) * std::cos(eps), std::sin(b) * std::cos(eps), -std::sin(eps)};
  }
  const int north = 2 * m, south = 2 * m + 1;
  // Apexes slightly off the axis so that a pole on the axis is generic.
  v[north] = SpherePoint{0.031, 0.017, 1.0}.normalized();
  v[south] = SpherePoint{-0.023, 0.029, -1.0}.normalized();
  std::vector<Face> faces;
  for (int k = 0; k < m; ++k) {
    const int u = k, un = (k + 1) % m, l = m + k, ln = m + (k + 1) % m;
    faces.push_back({u, l, un});
    faces.push_back({l, ln, un});
    faces.push_back({u, un, north});
    faces.push_back({ln, l, south});
  }
  return checked(SphereTriangulation(std::move(v), std::move(faces)), Tolerance{}, "equatorial_rotor");
}

}  // namespace sphmorph
