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


#include "sphmorph/planar.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

namespace sphmorph {

double orient2d(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& c) {
  return (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
}

double min_relative_orientation(const PlanarTriangulation& p) {
  double lo_u = 1e300, hi_u = -1e300, lo_v = 1e300, hi_v = -1e300;
  for (const auto& q : p.points) {
    lo_u = std::min(lo_u, q.u);
    hi_u = std::max(hi_u, q.u);
    lo_v = std::min(lo_v, q.v);
    hi_v = std::max(hi_v, q.v);
  }
  const double diam2 = (hi_u - lo_u) * (hi_u - lo_u) + (hi_v - lo_v) * (hi_v - lo_v);
  double worst = 1e300;
  for (int f = 0; f < p.topology->num_faces(); ++f) {
    if (f == p.outer_face) continue;
    const Face& t = p.topology->face(f);
    worst = std::min(worst, orient2d(p.points[t[0]], p.points[t[1]], p.points[t[2]]) / diam2);
  }
  return worst;
}

PlanarPoint to_plane(const SpherePoint& p) {
  if (!(p.z < 0.0)) throw DomainError("to_plane: point is not southern");
  return {p.x / p.z, -p.y / p.z};
}

SpherePoint lift_from_plane(const PlanarPoint& q) { return {-q.u, q.v, -1.0}; }

PlanarTriangulation to_planar(const SphereTriangulation& t, int outer_face) {
  PlanarTriangulation out;
  out.topology = t.topology_ptr();
  out.outer_face = outer_face;
  out.points.reserve(t.num_vertices());
  for (const auto& p : t.vertices()) out.points.push_back(to_plane(p));
  return out;
}

std::vector<SpherePoint> lift_from_plane(const std::vector<PlanarPoint>& q) {
  std::vector<SpherePoint> out;
  out.reserve(q.size());
  for (const auto& x : q) out.push_back(lift_from_plane(x));
  return out;
}

PlanarWeights mean_value_weights(const PlanarTriangulation& p, double floor) {
  const Topology& topo = *p.topology;
  const Face& outer = topo.face(p.outer_face);
  PlanarWeights w;
  w.lambda.resize(topo.num_vertices());
  for (int v = 0; v < topo.num_vertices(); ++v) {
    if (v == outer[0] || v == outer[1] || v == outer[2]) continue;
    const std::vector<int> ring = topo.neighbors_ccw(v);
    const int k = static_cast<int>(ring.size());
    const PlanarPoint c = p.points[v];
    std::vector<double> len(k), half_tan(k);
    for (int i = 0; i < k; ++i) {
      const PlanarPoint a = p.points[ring[i]], b = p.points[ring[(i + 1) % k]];
      const double au = a.u - c.u, av = a.v - c.v, bu = b.u - c.u, bv = b.v - c.v;
      len[i] = std::hypot(au, av);
      const double ang = std::atan2(au * bv - av * bu, au * bu + av * bv);
      half_tan[i] = std::tan(ang / 2.0);
    }
    std::vector<double> raw(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      raw[i] = (half_tan[(i + k - 1) % k] + half_tan[i]) / len[i];
      sum += raw[i];
    }
    double sum2 = 0.0;
    for (int i = 0; i < k; ++i) {
      raw[i] = std::max(raw[i] / sum, floor);
      sum2 += raw[i];
    }
    for (int i = 0; i < k; ++i) w.lambda[v].emplace_back(ring[i], raw[i] / sum2);
  }
  return w;
}

PlanarMorph::PlanarMorph(PlanarTriangulation p0, PlanarTriangulation p1) : p0_(std::move(p0)), p1_(std::move(p1)) {
  if (p0_.topology->faces() != p1_.topology->faces() || p0_.outer_face != p1_.outer_face)
    throw std::invalid_argument("PlanarMorph: drawings are not isomorphic");
  const Face& of = p0_.topology->face(p0_.outer_face);
  outer_ = {of[0], of[1], of[2]};
  w0_ = mean_value_weights(p0_);
  w1_ = mean_value_weights(p1_);

  // Affine map between the outer triangles, L = R(theta) U.
  auto centroid = [&](const PlanarTriangulation& p) {
    PlanarPoint c{0, 0};
    for (int v : outer_) {
      c.u += p.points[v].u / 3.0;
      c.v += p.points[v].v / 3.0;
    }
    return c;
  };
  c0_ = centroid(p0_);
  c1_ = centroid(p1_);
  Eigen::Matrix2d x0, x1;
  for (int k = 0; k < 2; ++k) {
    const PlanarPoint a0 = p0_.points[outer_[k + 1]], b0 = p0_.points[outer_[0]];
    const PlanarPoint a1 = p1_.points[outer_[k + 1]], b1 = p1_.points[outer_[0]];
    x0.col(k) << a0.u - b0.u, a0.v - b0.v;
    x1.col(k) << a1.u - b1.u, a1.v - b1.v;
  }
  const Eigen::Matrix2d l = x1 * x0.inverse();
  if (!(l.determinant() > 0.0)) throw SolveFailure("outer triangles have opposite orientation");
  theta_ = std::atan2(l(1, 0) - l(0, 1), l(0, 0) + l(1, 1));
  Eigen::Matrix2d r;
  r << std::cos(theta_), -std::sin(theta_), std::sin(theta_), std::cos(theta_);
  const Eigen::Matrix2d u = r.transpose() * l;
  const double off = 0.5 * (u(0, 1) + u(1, 0));
  sym_ = {u(0, 0), off, off, u(1, 1)};

  // Residuals of the raw solve at the endpoints.
  const auto s0 = solve(0.0), s1 = solve(1.0);
  const int n = static_cast<int>(s0.size());
  err0_.resize(n);
  err1_.resize(n);
  for (int i = 0; i < n; ++i) {
    err0_[i] = {p0_.points[i].u - s0[i].u, p0_.points[i].v - s0[i].v};
    err1_[i] = {p1_.points[i].u - s1[i].u, p1_.points[i].v - s1[i].v};
  }
}

std::array<PlanarPoint, 3> PlanarMorph::outer_at(double t) const {
  const double c = std::cos(t * theta_), s = std::sin(t * theta_);
  const double m00 = (1 - t) + t * sym_[0], m01 = t * sym_[1], m10 = t * sym_[2], m11 = (1 - t) + t * sym_[3];
  const double l00 = c * m00 - s * m10, l01 = c * m01 - s * m11;
  const double l10 = s * m00 + c * m10, l11 = s * m01 + c * m11;
  std::array<PlanarPoint, 3> out;
  for (int k = 0; k < 3; ++k) {
    const PlanarPoint x = p0_.points[outer_[k]];
    const double du = x.u - c0_.u, dv = x.v - c0_.v;
    out[k] = {l00 * du + l01 * dv + (1 - t) * c0_.u + t * c1_.u, l10 * du + l11 * dv + (1 - t) * c0_.v + t * c1_.v};
  }
  return out;
}

std::vector<PlanarPoint> PlanarMorph::solve(double t) const {
  const int n = static_cast<int>(p0_.points.size());
  std::vector<int> slot(n, -1);
  int m = 0;
  for (int v = 0; v < n; ++v)
    if (!w0_.lambda[v].empty()) slot[v] = m++;
  const auto outer = outer_at(t);
  std::vector<PlanarPoint> pos(n);
  for (int k = 0; k < 3; ++k) pos[outer_[k]] = outer[k];

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd bu = Eigen::VectorXd::Zero(m), bv = Eigen::VectorXd::Zero(m);
  for (int v = 0; v < n; ++v) {
    if (slot[v] < 0) continue;
    const int row = slot[v];
    trip.emplace_back(row, row, 1.0);
    const auto& a = w0_.lambda[v];
    const auto& b = w1_.lambda[v];
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) total += (1 - t) * a[i].second + t * b[i].second;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const int nb = a[i].first;
      const double lam = ((1 - t) * a[i].second + t * b[i].second) / total;
      if (slot[nb] >= 0) {
        trip.emplace_back(row, slot[nb], -lam);
      } else {
        bu[row] += lam * pos[nb].u;
        bv[row] += lam * pos[nb].v;
      }
    }
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw SolveFailure("convex-combination system is singular");
  const Eigen::VectorXd xu = lu.solve(bu), xv = lu.solve(bv);
  for (int v = 0; v < n; ++v)
    if (slot[v] >= 0) pos[v] = {xu[slot[v]], xv[slot[v]]};
  return pos;
}

std::vector<PlanarPoint> PlanarMorph::at(double t) const {
  auto pos = solve(t);
  if (err0_.empty()) return pos;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    pos[i].u += (1 - t) * err0_[i].u + t * err1_[i].u;
    pos[i].v += (1 - t) * err0_[i].v + t * err1_[i].v;
  }
  return pos;
}

std::vector<std::vector<PlanarPoint>> planar_morph_barycentric(const PlanarTriangulation& p0,
                                                               const PlanarTriangulation& p1, int frames) {
  if (frames < 2) throw std::invalid_argument("planar_morph_barycentric: need at least two frames");
  const PlanarMorph morph(p0, p1);
  std::vector<std::vector<PlanarPoint>> out;
  out.reserve(frames);
  for (int k = 0; k < frames; ++k) out.push_back(morph.at(static_cast<double>(k) / (frames - 1)));
  return out;
}

}  // namespace sphmorph
