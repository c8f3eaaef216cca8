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

#include "sphmorph/sphere.hpp"

#include <algorithm>
#include <numbers>

namespace sphmorph {

SpherePoint SpherePoint::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  return {x / n, y / n, z / n};
}

Tolerance::Tolerance(double r) : rel(r) {
  if (!(r > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

double vol(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r) {
  return p.x * (q.y * r.z - q.z * r.y) - p.y * (q.x * r.z - q.z * r.x) + p.z * (q.x * r.y - q.y * r.x);
}

int vol_sign(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r, Tolerance tol) {
  const double d = vol(p, q, r);
  const double scale = p.norm() * q.norm() * r.norm();
  if (std::abs(d) <= tol.rel * scale) return 0;
  return d > 0 ? 1 : -1;
}

int east_of(const SpherePoint& i, const SpherePoint& j, Tolerance tol) {
  const double d = i.x * j.y - j.x * i.y;
  const double scale = std::hypot(i.x, i.y) * std::hypot(j.x, j.y);
  if (std::abs(d) <= tol.rel * scale || scale == 0.0) return 0;
  return d > 0 ? 1 : -1;
}

Rotation::Rotation() : m_{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}} {}

Rotation::Rotation(const Matrix& m, double orth_tol) : m_(m) {
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m_[k][a] * m_[k][b];
      if (std::abs(s - (a == b ? 1.0 : 0.0)) > orth_tol) throw DomainError("matrix is not orthogonal");
    }
  }
  if (std::abs(determinant() - 1.0) > orth_tol) throw DomainError("rotation must have determinant +1");
}

Rotation Rotation::about_axis(const SpherePoint& axis, double angle) {
  const double n = axis.norm();
  if (n == 0.0) throw DomainError("rotation axis must be nonzero");
  const double kx = axis.x / n, ky = axis.y / n, kz = axis.z / n;
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  // Rodrigues.
  Matrix m{{{c + kx * kx * t, kx * ky * t - kz * s, kx * kz * t + ky * s},
            {ky * kx * t + kz * s, c + ky * ky * t, ky * kz * t - kx * s},
            {kz * kx * t - ky * s, kz * ky * t + kx * s, c + kz * kz * t}}};
  Rotation r;
  r.m_ = m;
  return r;
}

Rotation Rotation::pole_to_north(const SpherePoint& p) {
  const SpherePoint u = p.normalized();
  const SpherePoint axis = cross(u, kNorthPole);
  const double s = axis.norm();
  const double c = u.z;
  if (s < 1e-15) {
    if (c > 0) return identity();
    return about_axis({1, 0, 0}, std::numbers::pi);
  }
  return about_axis(axis, std::atan2(s, c));
}

SpherePoint Rotation::apply(const SpherePoint& p) const {
  return {m_[0][0] * p.x + m_[0][1] * p.y + m_[0][2] * p.z,
          m_[1][0] * p.x + m_[1][1] * p.y + m_[1][2] * p.z,
          m_[2][0] * p.x + m_[2][1] * p.y + m_[2][2] * p.z};
}

Rotation Rotation::operator*(const Rotation& rhs) const {
  Rotation r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m_[a][k] * rhs.m_[k][b];
      r.m_[a][b] = s;
    }
  return r;
}

Rotation Rotation::inverse() const {
  Rotation r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r.m_[a][b] = m_[b][a];
  return r;
}

double Rotation::determinant() const {
  return vol({m_[0][0], m_[0][1], m_[0][2]}, {m_[1][0], m_[1][1], m_[1][2]}, {m_[2][0], m_[2][1], m_[2][2]});
}

std::pair<SpherePoint, double> Rotation::axis_angle() const {
  const double tr = m_[0][0] + m_[1][1] + m_[2][2];
  const double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  const SpherePoint w{m_[2][1] - m_[1][2], m_[0][2] - m_[2][0], m_[1][0] - m_[0][1]};
  const double s = w.norm() / 2.0;
  const double angle = std::atan2(s, c);
  if (s > 1e-9) return {(1.0 / (2.0 * s)) * w, angle};
  if (c > 0) return {{0, 0, 1}, 0.0};
  // Half turn: axis from the largest diagonal entry of (R + I) / 2.
  int k = 0;
  for (int a = 1; a < 3; ++a)
    if (m_[a][a] > m_[k][k]) k = a;
  SpherePoint axis{(m_[0][k] + (k == 0 ? 1.0 : 0.0)), (m_[1][k] + (k == 1 ? 1.0 : 0.0)),
                   (m_[2][k] + (k == 2 ? 1.0 : 0.0))};
  return {axis.normalized(), angle};
}

PlanarPoint gnomonic_project(const SpherePoint& p) {
  if (!(p.z < 0.0)) throw DomainError("gnomonic projection requires z < 0");
  return {-p.x / p.z, -p.y / p.z};
}

PlanarPoint stereographic_project(const SpherePoint& p) {
  if (p.x == 0.0 && p.y == 0.0 && p.z > 0.0) throw DomainError("stereographic projection of the north pole");
  const double d = 1.0 - p.z;
  if (d == 0.0) throw DomainError("stereographic projection of the north pole");
  return {p.x / d, p.y / d};
}

SpherePoint DirectionSampler::next() {
  for (;;) {
    SpherePoint g{gauss_(rng_), gauss_(rng_), gauss_(rng_)};
    if (g.norm() > 1e-12) return g.normalized();
  }
}

SpherePoint random_direction(std::uint64_t seed) { return DirectionSampler(seed).next(); }

Rotation random_rotation(std::mt19937_64& rng) {
  // Uniform unit quaternion.
  std::normal_distribution<double> g(0.0, 1.0);
  double q[4];
  double n = 0.0;
  do {
    n = 0.0;
    for (double& c : q) {
      c = g(rng);
      n += c * c;
    }
  } while (n < 1e-20);
  n = std::sqrt(n);
  const double w = q[0] / n, x = q[1] / n, y = q[2] / n, z = q[3] / n;
  Rotation::Matrix m{{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                      {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                      {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
  return Rotation(m, 1e-9);
}

double angle_between(const SpherePoint& a, const SpherePoint& b) {
  return std::atan2(cross(a, b).norm(), dot(a, b));
}

}  // namespace sphmorph
