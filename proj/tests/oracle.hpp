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

// Reference computations for the tests, written against raw coordinates and
// face lists only so that they do not share code paths with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::array<double, 3>;
using Tri = std::array<int, 3>;

inline double det(const Vec& a, const Vec& b, const Vec& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}
inline double dotp(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double len(const Vec& a) { return std::sqrt(dotp(a, a)); }
inline Vec unit(const Vec& a) {
  const double l = len(a);
  return {a[0] / l, a[1] / l, a[2] / l};
}

/// Uniform direction via rejection sampling in the cube.
inline Vec random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const Vec v{u(rng), u(rng), u(rng)};
    const double l = len(v);
    if (l > 1e-3 && l <= 1.0) return unit(v);
  }
}

/// Face across each dart: key (a, b) -> face having a -> b on its boundary.
inline std::map<std::pair<int, int>, int> dart_faces(const std::vector<Tri>& faces) {
  std::map<std::pair<int, int>, int> m;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int k = 0; k < 3; ++k) m[{faces[f][k], faces[f][(k + 1) % 3]}] = f;
  return m;
}

/// Shellability from the due-north relation: moving north off edge a -> b
/// enters the face on its left exactly when det(pole, a, b) > 0. The mesh is
/// shellable from the pole iff that relation has no directed cycle.
/// nullopt when some edge is within `rel` of lying on a great circle through the pole.
inline std::optional<bool> shellable(const std::vector<Vec>& v, const std::vector<Tri>& faces, const Vec& pole,
                                     double rel = 1e-9) {
  const int m = static_cast<int>(faces.size());
  const auto darts = dart_faces(faces);
  std::vector<std::vector<int>> out(m);
  std::vector<int> indeg(m, 0);
  for (int f = 0; f < m; ++f) {
    for (int k = 0; k < 3; ++k) {
      const int a = faces[f][k], b = faces[f][(k + 1) % 3];
      const double d = det(pole, v[a], v[b]);
      if (std::abs(d) <= rel * len(pole) * len(v[a]) * len(v[b])) return std::nullopt;
      if (d > 0) {
        const int g = darts.at({b, a});
        out[f].push_back(g);  // f lies due north of g
        ++indeg[g];
      }
    }
  }
  std::vector<int> queue;
  for (int f = 0; f < m; ++f)
    if (indeg[f] == 0) queue.push_back(f);
  std::size_t head = 0;
  while (head < queue.size()) {
    const int f = queue[head++];
    for (int g : out[f])
      if (--indeg[g] == 0) queue.push_back(g);
  }
  return static_cast<int>(queue.size()) == m;
}

/// Area of the spherical triangle on the left of its boundary: the small
/// triangle when det > 0, the complement of the reversed one otherwise.
inline double face_area(const Vec& a0, const Vec& b0, const Vec& c0) {
  const Vec a = unit(a0), b = unit(b0), c = unit(c0);
  const double e = 2.0 * std::atan2(det(a, b, c), 1.0 + dotp(a, b) + dotp(b, c) + dotp(c, a));
  return e >= 0 ? e : 4.0 * std::numbers::pi + e;
}

/// Geodesic triangulation test: at most one face with det <= 0 and the face
/// areas tile the sphere exactly once.
inline bool embedded(const std::vector<Vec>& v, const std::vector<Tri>& faces, double area_tol = 1e-6) {
  int bad = 0;
  double total = 0.0;
  for (const auto& f : faces) {
    if (det(v[f[0]], v[f[1]], v[f[2]]) <= 0) ++bad;
    total += face_area(v[f[0]], v[f[1]], v[f[2]]);
  }
  return bad <= 1 && std::abs(total - 4.0 * std::numbers::pi) < area_tol;
}

/// Rotation taking `p` to (0, 0, 1) by Rodrigues' formula, applied to q.
inline Vec to_pole_frame(const Vec& p0, const Vec& q) {
  const Vec p = unit(p0);
  const Vec axis{p[1], -p[0], 0.0};  // p x e_z
  const double s = len(axis), c = p[2];
  if (s < 1e-15) return c > 0 ? q : Vec{q[0], -q[1], -q[2]};
  const Vec k{axis[0] / s, axis[1] / s, 0.0};
  const Vec kxq{k[1] * q[2] - k[2] * q[1], k[2] * q[0] - k[0] * q[2], k[0] * q[1] - k[1] * q[0]};
  const double kq = dotp(k, q);
  Vec r;
  for (int i = 0; i < 3; ++i) r[i] = q[i] * c + kxq[i] * s + k[i] * kq * (1 - c);
  return r;
}

enum class Sink { Sinkable, Unsinkable, Singular, Degenerate };

struct SinkAnswer {
  Sink verdict = Sink::Degenerate;
  std::vector<double> z;     // heights in the pole frame
  double pivot_ratio = 0.0;  // smallest over largest pivot after row scaling
};

/// Sinkability from scratch: rotate the pole to +z, pin the north face at
/// height -1, make every down-face (exactly one neighbor due north of it)
/// flat, solve by dense Gaussian elimination, then test the sign conditions
/// with slack tau = 1e-8 * (max |coordinate|)^3.
inline SinkAnswer sink(const std::vector<Vec>& v0, const std::vector<Tri>& faces, const Vec& pole,
                       double singular_ratio = 1e-12, double rel = 1e-9) {
  const int n = static_cast<int>(v0.size());
  const int m = static_cast<int>(faces.size());
  std::vector<Vec> v;
  for (const auto& p : v0) v.push_back(to_pole_frame(pole, p));
  const Vec up{0, 0, 1};
  std::vector<int> north_in(m, 0);
  for (int f = 0; f < m; ++f)
    for (int k = 0; k < 3; ++k) {
      const Vec &a = v[faces[f][k]], &b = v[faces[f][(k + 1) % 3]];
      const double d = det(up, a, b);
      if (std::abs(d) <= rel * len(a) * len(b)) return {};
      north_in[f] += d < 0;
    }
  int north = -1;
  std::vector<int> down;
  for (int f = 0; f < m; ++f) {
    if (north_in[f] == 0) {
      if (north >= 0) return {};
      north = f;
    }
    if (north_in[f] == 1) down.push_back(f);
  }
  if (north < 0 || static_cast<int>(down.size()) != n - 3) return {};

  // Row f: vol of (x, y, z') is linear in the three heights of face f.
  auto cof = [&](const Tri& f) {
    std::array<double, 3> c;
    for (int k = 0; k < 3; ++k) {
      const Vec &b = v[f[(k + 1) % 3]], &d = v[f[(k + 2) % 3]];
      c[k] = b[0] * d[1] - b[1] * d[0];
    }
    return c;
  };
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (int k = 0; k < 3; ++k) a[k][faces[north][k]] = 1.0, a[k][n] = -1.0;
  for (int r = 0; r < n - 3; ++r) {
    const auto c = cof(faces[down[r]]);
    for (int k = 0; k < 3; ++k) a[r + 3][faces[down[r]][k]] += c[k];
  }
  for (auto& row : a) {
    double mx = 0;
    for (int j = 0; j < n; ++j) mx = std::max(mx, std::abs(row[j]));
    if (mx == 0) return {Sink::Singular, {}, 0.0};
    for (double& x : row) x /= mx;
  }
  double pmin = 1e300, pmax = 0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    const double p = std::abs(a[col][col]);
    pmin = std::min(pmin, p), pmax = std::max(pmax, p);
    if (p == 0) break;
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0) continue;
      for (int j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  SinkAnswer ans;
  ans.pivot_ratio = pmax > 0 ? pmin / pmax : 0.0;
  if (ans.pivot_ratio < singular_ratio) {
    ans.verdict = Sink::Singular;
    return ans;
  }
  ans.z.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double acc = a[r][n];
    for (int j = r + 1; j < n; ++j) acc -= a[r][j] * ans.z[j];
    ans.z[r] = acc / a[r][r];
  }
  double scale = 0;
  for (int i = 0; i < n; ++i) scale = std::max({scale, std::abs(v[i][0]), std::abs(v[i][1]), std::abs(ans.z[i])});
  const double tau = 1e-8 * scale * scale * scale;
  bool ok = true;
  for (int i = 0; i < n; ++i) ok = ok && ans.z[i] < 0;
  for (int f = 0; f < m; ++f) {
    if (north_in[f] == 0 || north_in[f] == 3) continue;
    const auto c = cof(faces[f]);
    double vol = 0;
    for (int k = 0; k < 3; ++k) vol += c[k] * ans.z[faces[f][k]];
    ok = ok && vol >= -tau;
  }
  ans.verdict = ok ? Sink::Sinkable : Sink::Unsinkable;
  return ans;
}

}  // namespace oracle
