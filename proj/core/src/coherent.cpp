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

#include "sphmorph/coherent.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <optional>
#include <numbers>
#include <queue>

#include "sphmorph/hull.hpp"

namespace sphmorph {

bool is_coherent(const SphereTriangulation& t, Tolerance tol) {
  const auto& v = t.vertices();
  for (int f = 0; f < t.num_faces(); ++f) {
    const Face& tri = t.face(f);
    if (vol_sign(v[tri[0]], v[tri[1]], v[tri[2]], tol) <= 0) return false;
  }
  const Topology& topo = t.topology();
  for (int f = 0; f < t.num_faces(); ++f) {
    const Face& tri = t.face(f);
    for (int k = 0; k < 3; ++k) {
      const int g = topo.adjacent_face(f, k);
      if (g < f) continue;
      int l = -1;
      for (int x : t.face(g))
        if (x != tri[k] && x != tri[(k + 1) % 3]) l = x;
      const SpherePoint &a = v[tri[0]], &b = v[tri[1]], &c = v[tri[2]], &d = v[l];
      const double scale = (b - a).norm() * (c - a).norm() * (d - a).norm();
      if (orient3d(a, b, c, d) >= -tol.rel * scale) return false;
    }
  }
  return true;
}

namespace {

std::optional<SphereTriangulation> tutte_lift(const SphereTriangulation& t, int outer_face) {
  const int n = t.num_vertices();
  const Face outer = t.face(outer_face);
  const Topology& topo = t.topology();

  // Tutte embedding with unit weights, boundary on an equilateral triangle.
  std::vector<int> slot(n, -1);
  for (int k = 0; k < 3; ++k) slot[outer[k]] = -2 - k;
  int m = 0;
  for (int v = 0; v < n; ++v)
    if (slot[v] == -1) slot[v] = m++;
  std::vector<Eigen::Vector2d> pos(n);
  for (int k = 0; k < 3; ++k) {
    // Clockwise placement: seen from the remaining faces the outer face turns the other way.
    const double a = std::numbers::pi / 2 - 2 * std::numbers::pi * k / 3;
    pos[outer[k]] = {std::cos(a), std::sin(a)};
  }
  std::vector<std::vector<int>> nbr(n);
  for (const Edge& e : t.edges()) {
    nbr[e.a].push_back(e.b);
    nbr[e.b].push_back(e.a);
  }
  if (m > 0) {
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
    for (int v = 0; v < n; ++v) {
      if (slot[v] < 0) continue;
      const int r = slot[v];
      trip.emplace_back(r, r, static_cast<double>(nbr[v].size()));
      for (int w : nbr[v]) {
        if (slot[w] >= 0) trip.emplace_back(r, slot[w], -1.0);
        else rhs.row(r) += pos[w].transpose();
      }
    }
    Eigen::SparseMatrix<double> a(m, m);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) return std::nullopt;
    const Eigen::MatrixXd x = lu.solve(rhs);
    for (int v = 0; v < n; ++v)
      if (slot[v] >= 0) pos[v] = x.row(slot[v]).transpose();
  }
  auto cross2 = [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); };

  // Edge stresses: one on interior edges, boundary stresses from equilibrium
  // at each outer vertex.
  auto is_outer = [&](int v) { return slot[v] < 0; };
  auto boundary_omega = [&](int a, int b) {
    // Solve at vertex a: sum_w (p_w - p_a) + w_ab (p_b - p_a) + w_ac (p_c - p_a) = 0.
    int c = -1;
    for (int x : outer)
      if (x != a && x != b) c = x;
    Eigen::Vector2d load = Eigen::Vector2d::Zero();
    for (int w : nbr[a])
      if (!is_outer(w)) load += pos[w] - pos[a];
    Eigen::Matrix2d mat;
    mat.col(0) = pos[b] - pos[a];
    mat.col(1) = pos[c] - pos[a];
    const Eigen::Vector2d sol = mat.fullPivLu().solve(-load);
    return sol(0);
  };
  auto omega = [&](int a, int b) {
    if (is_outer(a) && is_outer(b)) return 0.5 * (boundary_omega(a, b) + boundary_omega(b, a));
    return 1.0;
  };

  // Maxwell-Cremona lift: each face carries an affine height h_f(p) = g_f . p + c_f;
  // across dart i -> j (left face f, right face g) h_g - h_f = w_ij * cross(p_j - p_i, p - p_i).
  const int nf = t.num_faces();
  std::vector<Eigen::Vector3d> plane(nf, Eigen::Vector3d::Zero());  // (g_x, g_y, c)
  std::vector<char> done(nf, 0);
  const int start = topo.adjacent_face(outer_face, 0);
  done[start] = 1;
  std::queue<int> q;
  q.push(start);
  while (!q.empty()) {
    const int f = q.front();
    q.pop();
    const Face& tri = t.face(f);
    for (int k = 0; k < 3; ++k) {
      const int g = topo.adjacent_face(f, k);
      if (g == outer_face || done[g]) continue;
      const int i = tri[k], j = tri[(k + 1) % 3];
      const double w = omega(i, j);
      const Eigen::Vector2d d = pos[j] - pos[i];
      // cross(d, p - p_i) = d.x (p.y - p_i.y) - d.y (p.x - p_i.x)
      const Eigen::Vector3d delta(-w * d.y(), w * d.x(), -w * cross2(d, pos[i]));
      plane[g] = plane[f] + delta;
      done[g] = 1;
      q.push(g);
    }
  }
  std::vector<double> h(n, 0.0);
  std::vector<char> hset(n, 0);
  for (int f = 0; f < nf; ++f) {
    if (f == outer_face) continue;
    for (int v : t.face(f)) {
      if (hset[v]) continue;
      h[v] = plane[f](0) * pos[v].x() + plane[f](1) * pos[v].y() + plane[f](2);
      hset[v] = 1;
    }
  }
  // Scale heights to the planar extent.
  double hmin = *std::min_element(h.begin(), h.end());
  double hmax = *std::max_element(h.begin(), h.end());
  const double span = std::max(hmax - hmin, 1e-300);
  for (double& x : h) x = (x - hmin) / span;

  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<SpherePoint> p(n);
    const double sz = (attempt & 1) ? -1.0 : 1.0;
    const double sx = (attempt & 2) ? -1.0 : 1.0;
    SpherePoint centroid{0, 0, 0};
    for (int v = 0; v < n; ++v) {
      p[v] = {sx * pos[v].x(), pos[v].y(), sz * h[v]};
      centroid += p[v];
    }
    centroid = (1.0 / n) * centroid;
    for (auto& x : p) x = x - centroid;
    SphereTriangulation out = t.with_vertices(std::move(p));
    if (is_coherent(out) && validate(out).ok()) return out;
  }
  return std::nullopt;
}

// Koebe polyhedron: pack circles for the triangulation in the plane, move the
// packing to the sphere, center it with Lorentz boosts, and place each vertex
// at the apex of the cone tangent to the sphere along its circle.
std::optional<SphereTriangulation> koebe_realization(const SphereTriangulation& t, int outer_face) {
  const int n = t.num_vertices();
  const Topology& topo = t.topology();
  const Face outer = t.face(outer_face);
  std::vector<char> fixed(n, 0);
  for (int v : outer) fixed[v] = 1;
  std::vector<double> r(n, 1.0);

  // Angle at v in the triangle of mutually tangent circles v, a, b.
  auto angle = [&](int v, int a, int b) {
    const double q = r[a] * r[b] / ((r[v] + r[a]) * (r[v] + r[b]));
    return 2.0 * std::asin(std::sqrt(std::min(1.0, q)));
  };
  auto angle_sum = [&](int v) {
    double s = 0.0;
    for (int f : topo.vertex_faces(v)) {
      const Face& tri = t.face(f);
      const int k = tri[0] == v ? 0 : (tri[1] == v ? 1 : 2);
      s += angle(v, tri[(k + 1) % 3], tri[(k + 2) % 3]);
    }
    return s;
  };
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (int sweep = 0; sweep < 200000; ++sweep) {
    double worst = 0.0;
    for (int v = 0; v < n; ++v) {
      if (fixed[v]) continue;
      const int k = static_cast<int>(topo.vertex_faces(v).size());
      const double theta = angle_sum(v);
      worst = std::max(worst, std::abs(theta - kTwoPi));
      const double beta = std::sin(theta / (2.0 * k));
      const double delta = std::sin(std::numbers::pi / k);
      const double rhat = r[v] * beta / (1.0 - beta);
      r[v] = rhat * (1.0 - delta) / delta;
    }
    if (worst < 1e-13) break;
  }

  // Layout by walking faces. Interior faces come out clockwise, so the outer
  // triple is laid counterclockwise.
  std::vector<Eigen::Vector2d> c(n);
  std::vector<char> placed(n, 0);
  c[outer[0]] = {0.0, 0.0};
  c[outer[1]] = {r[outer[0]] + r[outer[1]], 0.0};
  {
    const double a = r[outer[0]] + r[outer[2]];
    const double ang = angle(outer[0], outer[1], outer[2]);
    c[outer[2]] = {a * std::cos(ang), a * std::sin(ang)};
  }
  for (int v : outer) placed[v] = 1;
  std::vector<char> done(t.num_faces(), 0);
  done[outer_face] = 1;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int f = 0; f < t.num_faces(); ++f) {
      if (done[f]) continue;
      const Face& tri = t.face(f);
      int cnt = 0;
      for (int v : tri) cnt += placed[v];
      if (cnt < 2) continue;
      done[f] = 1;
      if (cnt == 3) continue;
      progress = true;
      const int k = !placed[tri[0]] ? 0 : (!placed[tri[1]] ? 1 : 2);
      const int w = tri[k], i = tri[(k + 1) % 3], j = tri[(k + 2) % 3];
      // Face (w, i, j) clockwise: w lies to the right of i -> j.
      const Eigen::Vector2d d = (c[j] - c[i]).normalized();
      const double ang = angle(i, j, w);
      const double len = r[i] + r[w];
      const double ca = std::cos(ang), sa = std::sin(ang);
      const Eigen::Vector2d dir(ca * d.x() + sa * d.y(), -sa * d.x() + ca * d.y());
      c[w] = c[i] + len * dir;
      placed[w] = 1;
    }
  }
  for (int v = 0; v < n; ++v)
    if (!placed[v]) return std::nullopt;

  // Caps on the sphere as Minkowski vectors (center / sin rho, cos rho / sin rho).
  auto lift = [](const Eigen::Vector2d& z) {
    const double s = 1.0 + z.squaredNorm();
    return Eigen::Vector3d(2 * z.x() / s, 2 * z.y() / s, (z.squaredNorm() - 1.0) / s);
  };
  double scale = 0.0;
  for (int v = 0; v < n; ++v) scale = std::max(scale, c[v].norm() + r[v]);
  std::vector<Eigen::Vector4d> cap(n);
  for (int v = 0; v < n; ++v) {
    const Eigen::Vector2d z0 = c[v] / scale;
    const double rr = r[v] / scale;
    const Eigen::Vector3d A = lift(z0 + Eigen::Vector2d(rr, 0));
    const Eigen::Vector3d B = lift(z0 + Eigen::Vector2d(0, rr));
    const Eigen::Vector3d C = lift(z0 - Eigen::Vector2d(rr, 0));
    Eigen::Vector3d m = (B - A).cross(C - A);
    double d = m.dot(A);
    if (m.dot(lift(z0)) < d) {
      m = -m;
      d = -d;
    }
    const double mn = m.norm();
    const Eigen::Vector3d center = m / mn;
    const double cosr = d / mn;
    const double sinr = std::sqrt(std::max(0.0, 1.0 - cosr * cosr));
    if (sinr <= 0.0) return std::nullopt;
    cap[v] << center / sinr, cosr / sinr;
  }
  auto center_of = [](const Eigen::Vector4d& l) { return Eigen::Vector3d(l.head<3>().normalized()); };
  for (int it = 0; it < 500; ++it) {
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (const auto& l : cap) mean += center_of(l);
    mean /= n;
    const double len = mean.norm();
    if (len < 1e-10) break;
    const Eigen::Vector3d u = mean / len;
    const double rap = std::atanh(std::min(len, 0.9));
    const double ch = std::cosh(rap), sh = std::sinh(rap);
    for (auto& l : cap) {
      const Eigen::Vector3d v = l.head<3>();
      const double par = u.dot(v);
      const double w = l(3);
      const double par2 = ch * par - sh * w;
      const double w2 = ch * w - sh * par;
      l.head<3>() = v + (par2 - par) * u;
      l(3) = w2;
    }
  }
  std::vector<SpherePoint> p(n);
  for (int v = 0; v < n; ++v) {
    const double vn = cap[v].head<3>().norm();
    const double cosr = cap[v](3) / vn;
    if (!(cosr > 1e-9)) return std::nullopt;  // cap at least a hemisphere
    const Eigen::Vector3d ctr = cap[v].head<3>() / vn;
    p[v] = {ctr.x() / cosr, ctr.y() / cosr, ctr.z() / cosr};
  }
  for (int mirror = 0; mirror < 2; ++mirror) {
    std::vector<SpherePoint> q = p;
    if (mirror)
      for (auto& x : q) x.x = -x.x;
    SphereTriangulation out = t.with_vertices(std::move(q));
    if (is_coherent(out) && validate(out).ok()) return out;
  }
  return std::nullopt;
}

}  // namespace

SphereTriangulation coherent_realization(const SphereTriangulation& t, int outer_face) {
  if (outer_face < 0 || outer_face >= t.num_faces()) throw RealizationFailure("outer face out of range");
  if (!t.topology().problems().empty()) throw RealizationFailure("input is not a triangulation");
  if (auto c = tutte_lift(t, outer_face)) return *c;
  // Unit-weight Tutte drawings crowd deep vertices together; the circle
  // packing realization keeps face sizes comparable.
  if (auto c = koebe_realization(t, outer_face)) return *c;
  throw RealizationFailure("no realization passed the convexity certificate");
}

}  // namespace sphmorph
