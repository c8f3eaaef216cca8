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

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace sphmorph {

/// Thrown when a geometric primitive is evaluated outside its domain
/// (projection of a pole, rotation about a zero axis, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A point of S^2 in signed homogeneous coordinates. Any positive multiple
/// represents the same point; coordinates are kept exactly as given.
struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr SpherePoint() = default;
  constexpr SpherePoint(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  /// Unit representative. Idempotent up to rounding; throws on the zero vector.
  SpherePoint normalized() const;

  SpherePoint operator-() const { return {-x, -y, -z}; }
  SpherePoint& operator+=(const SpherePoint& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  friend SpherePoint operator+(SpherePoint a, const SpherePoint& b) { return a += b; }
  friend SpherePoint operator-(const SpherePoint& a, const SpherePoint& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend SpherePoint operator*(double s, const SpherePoint& p) { return {s * p.x, s * p.y, s * p.z}; }
  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

inline double dot(const SpherePoint& a, const SpherePoint& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline SpherePoint cross(const SpherePoint& a, const SpherePoint& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline constexpr SpherePoint kNorthPole{0.0, 0.0, 1.0};
inline constexpr SpherePoint kSouthPole{0.0, 0.0, -1.0};

/// Relative zero threshold for determinant signs: |det| <= rel * |p||q||r|
/// is treated as zero.
struct Tolerance {
  double rel = 1e-9;

  constexpr Tolerance() = default;
  explicit Tolerance(double r);
};

/// det of the 3x3 matrix with rows p, q, r.
double vol(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r);

/// Sign of vol(p, q, r) with the relative zero band of `tol`.
int vol_sign(const SpherePoint& p, const SpherePoint& q, const SpherePoint& r, Tolerance tol = {});

/// +1 if j is east of i (x_i y_j - x_j y_i > 0), -1 if west, 0 if the two
/// share a longitude (or antipodal longitudes) within tolerance.
int east_of(const SpherePoint& i, const SpherePoint& j, Tolerance tol = {});

/// Proper rotation of R^3, row-major.
class Rotation {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  Rotation();  // identity
  /// Validates orthogonality and det = +1 within `orth_tol`.
  explicit Rotation(const Matrix& m, double orth_tol = 1e-9);

  static Rotation identity() { return {}; }
  /// Right-hand rule rotation by `angle` radians about `axis`.
  static Rotation about_axis(const SpherePoint& axis, double angle);
  /// Minimal rotation taking the direction of p to (0, 0, 1).
  static Rotation pole_to_north(const SpherePoint& p);

  SpherePoint apply(const SpherePoint& p) const;
  SpherePoint operator()(const SpherePoint& p) const { return apply(p); }
  Rotation operator*(const Rotation& rhs) const;
  Rotation inverse() const;
  const Matrix& matrix() const { return m_; }
  double determinant() const;

  /// Axis/angle decomposition (angle in [0, pi]); axis is unit, arbitrary when angle == 0.
  std::pair<SpherePoint, double> axis_angle() const;

 private:
  Matrix m_;
};

inline SpherePoint rotate(const Rotation& r, const SpherePoint& p) { return r.apply(p); }

struct PlanarPoint {
  double u = 0.0;
  double v = 0.0;
  friend bool operator==(const PlanarPoint&, const PlanarPoint&) = default;
};

/// (x, y, z) -> (-x/z, -y/z); requires z < 0.
PlanarPoint gnomonic_project(const SpherePoint& p);
/// (x, y, z) -> (x/(1-z), y/(1-z)) applied to p as given (callers pass unit
/// vectors); rejects the north pole.
PlanarPoint stereographic_project(const SpherePoint& p);

/// Deterministic stream of uniformly distributed unit vectors.
class DirectionSampler {
 public:
  explicit DirectionSampler(std::uint64_t seed) : rng_(seed) {}
  SpherePoint next();

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

/// First vector of DirectionSampler(seed).
SpherePoint random_direction(std::uint64_t seed);

/// Uniformly random proper rotation driven by `rng`.
Rotation random_rotation(std::mt19937_64& rng);

/// Angle in [0, pi] between the directions of a and b.
double angle_between(const SpherePoint& a, const SpherePoint& b);

}  // namespace sphmorph
