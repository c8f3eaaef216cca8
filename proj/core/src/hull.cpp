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

#include "sphmorph/hull.hpp"

#include <algorithm>
#include <unordered_map>

namespace sphmorph {

double orient3d(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, const SpherePoint& d) {
  return vol(b - a, c - a, d - a);
}

namespace {

std::uint64_t key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) | static_cast<std::uint32_t>(j);
}

}  // namespace

std::vector<Face> convex_hull(const std::vector<SpherePoint>& pts, double rel_eps) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DegenerateHull("need at least 4 points");

  double extent = 0.0;
  for (const auto& p : pts) extent = std::max({extent, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
  if (extent == 0.0) throw DegenerateHull("all points at the origin");
  const double eps = rel_eps * extent * extent * extent;

  // Seed tetrahedron from well-spread points.
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  double best = 0.0;
  for (int i = 1; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = cross(pts[i1] - pts[i0], pts[i] - pts[i0]).norm();
    if (a > best) best = a, i2 = i;
  }
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::abs(orient3d(pts[i0], pts[i1], pts[i2], pts[i]));
    if (v > best) best = v, i3 = i;
  }
  if (i1 < 0 || i2 < 0 || i3 < 0 || best <= eps) throw DegenerateHull("points are coplanar");

  std::vector<Face> faces;
  std::vector<char> alive;
  std::unordered_map<std::uint64_t, int> dart;
  auto add = [&](int a, int b, int c) {
    const int f = static_cast<int>(faces.size());
    faces.push_back({a, b, c});
    alive.push_back(1);
    dart[key(a, b)] = f;
    dart[key(b, c)] = f;
    dart[key(c, a)] = f;
  };
  if (orient3d(pts[i0], pts[i1], pts[i2], pts[i3]) > 0) std::swap(i1, i2);
  // Now i3 lies behind (i0, i1, i2).
  add(i0, i1, i2);
  add(i0, i3, i1);
  add(i1, i3, i2);
  add(i2, i3, i0);

  std::vector<int> visible;
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    visible.clear();
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!alive[f]) continue;
      const Face& t = faces[f];
      const double o = orient3d(pts[t[0]], pts[t[1]], pts[t[2]], pts[p]);
      if (o > eps) visible.push_back(f);
    }
    if (visible.empty()) throw DegenerateHull("point " + std::to_string(p) + " is not a strict hull vertex");
    std::vector<char> vis(faces.size(), 0);
    for (int f : visible) vis[f] = 1;
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      const Face& t = faces[f];
      for (int k = 0; k < 3; ++k) {
        const int a = t[k], b = t[(k + 1) % 3];
        auto it = dart.find(key(b, a));
        if (it != dart.end() && !vis[it->second]) horizon.emplace_back(a, b);
      }
    }
    for (int f : visible) {
      alive[f] = 0;
      const Face& t = faces[f];
      for (int k = 0; k < 3; ++k) dart.erase(key(t[k], t[(k + 1) % 3]));
    }
    for (auto [a, b] : horizon) add(a, b, p);
  }

  std::vector<Face> out;
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (alive[f]) out.push_back(faces[f]);
  // Intermediate hulls may hold coplanar faces; the final one must be strictly convex.
  for (const Face& t : out)
    for (int q = 0; q < n; ++q) {
      if (q == t[0] || q == t[1] || q == t[2]) continue;
      if (orient3d(pts[t[0]], pts[t[1]], pts[t[2]], pts[q]) > -eps) {
        throw DegenerateHull("point " + std::to_string(q) + " is coplanar with a hull face");
      }
    }
  std::vector<char> used(n, 0);
  for (const Face& t : out)
    for (int v : t) used[v] = 1;
  for (int v = 0; v < n; ++v)
    if (!used[v]) throw DegenerateHull("point " + std::to_string(v) + " is not a hull vertex");
  return out;
}

}  // namespace sphmorph
