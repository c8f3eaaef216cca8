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

#include "sphmorph/sinking.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sphmorph {

std::array<double, 3> height_cofactors(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c) {
  return {b.x * c.y - c.x * b.y, c.x * a.y - a.x * c.y, a.x * b.y - b.x * a.y};
}

double SinkSystem::evaluate(int r, const std::vector<double>& z) const {
  const Row& row = rows[r];
  double s = 0.0;
  for (int k = 0; k < row.terms; ++k) s += row.coef[k] * z[row.index[k]];
  return s;
}

SinkSystem build_sink_system(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol) {
  SinkSystem s;
  s.pole = pole;
  s.topology = t.topology_ptr();
  s.frame = Rotation::pole_to_north(pole);
  s.points.reserve(t.num_vertices());
  for (const auto& p : t.vertices()) s.points.push_back(s.frame(p));
  // Classify in the frame so the later height algebra sees the same signs.
  const SphereTriangulation framed = t.with_vertices(s.points);
  s.classification = classify_faces(framed, kNorthPole, tol);
  s.classification.pole = pole;
  const FaceClassification& fc = s.classification;

  for (int v : t.face(fc.north_face)) {
    SinkSystem::Row row;
    row.index = {v, -1, -1};
    row.coef = {1.0, 0.0, 0.0};
    row.rhs = -1.0;
    row.face = fc.north_face;
    row.terms = 1;
    s.rows.push_back(row);
  }
  for (int f = 0; f < t.num_faces(); ++f) {
    if (fc.labels[f] != FaceLabel::Down) continue;
    const Face& tri = t.face(f);
    SinkSystem::Row row;
    row.index = tri;
    row.coef = height_cofactors(s.points[tri[0]], s.points[tri[1]], s.points[tri[2]]);
    row.face = f;
    row.terms = 3;
    s.rows.push_back(row);
  }
  if (s.size() != static_cast<int>(s.rows.size())) {
    throw DegenerateDirection("sink system has " + std::to_string(s.rows.size()) + " rows for " +
                              std::to_string(s.size()) + " unknowns");
  }
  return s;
}

SinkSolve solve_sink_system(const SinkSystem& s, double* pivot_ratio) {
  const int n = s.size();
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(3 * n);
  Eigen::VectorXd b(n);
  for (int r = 0; r < n; ++r) {
    const auto& row = s.rows[r];
    double scale = 0.0;
    for (int k = 0; k < row.terms; ++k) scale = std::max(scale, std::abs(row.coef[k]));
    if (scale == 0.0) return Singular{0.0};
    for (int k = 0; k < row.terms; ++k) entries.emplace_back(r, row.index[k], row.coef[k] / scale);
    b(r) = row.rhs / scale;
  }
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) return Singular{0.0};

  // Rows are equilibrated to unit max entry, so the diagonal of U is already
  // on the scale of the input.
  const auto& l = lu.matrixL().m_mapL;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int j = 0; j < n; ++j) {
    for (typename std::decay_t<decltype(l)>::InnerIterator it(l, j); it; ++it) {
      if (it.index() != j) continue;
      lo = std::min(lo, std::abs(it.value()));
      hi = std::max(hi, std::abs(it.value()));
      break;
    }
  }
  const double ratio = hi > 0.0 ? lo / hi : 0.0;
  if (pivot_ratio) *pivot_ratio = ratio;
  if (!(ratio >= 1e-12)) return Singular{ratio};

  const Eigen::VectorXd x = lu.solve(b);
  const double res = (a * x - b).norm() / std::max(1.0, b.norm());
  if (!(res <= 1e-8) || !x.allFinite()) return Singular{ratio};
  return std::vector<double>(x.data(), x.data() + n);
}

namespace {

double feasibility_tau(const std::vector<SpherePoint>& pts, const std::vector<double>& z) {
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m = std::max({m, std::abs(pts[i].x), std::abs(pts[i].y), std::abs(z[i])});
  }
  return 1e-8 * m * m * m;
}

}  // namespace

FeasibilityReport check_lp_feasible(const SinkSystem& s, const std::vector<double>& z) {
  FeasibilityReport rep;
  const FaceClassification& fc = s.classification;
  const int n = s.size();
  if (static_cast<int>(z.size()) != n) return rep;
  for (double h : z)
    if (!std::isfinite(h)) return rep;
  rep.tau = feasibility_tau(s.points, z);
  const std::vector<SpherePoint> p = blend_heights(s.points, z, 1.0);
  bool ok = true;

  for (int v : s.topology->face(fc.north_face)) {
    rep.max_north_error = std::max(rep.max_north_error, std::abs(z[v] + 1.0));
  }
  if (rep.max_north_error > rep.tau) ok = false;

  rep.max_height = *std::max_element(z.begin(), z.end());
  if (!(rep.max_height < 0.0)) ok = false;

  rep.min_face_vol = std::numeric_limits<double>::infinity();
  for (int f = 0; f < s.topology->num_faces(); ++f) {
    const FaceLabel label = fc.labels[f];
    if (label == FaceLabel::North || label == FaceLabel::South) continue;
    const Face& tri = s.topology->face(f);
    const double v = vol(p[tri[0]], p[tri[1]], p[tri[2]]);
    if (v < rep.min_face_vol) {
      rep.min_face_vol = v;
      rep.min_face = f;
    }
    if (label == FaceLabel::Down) {
      rep.max_down_abs = std::max(rep.max_down_abs, std::abs(v));
    } else if (v <= rep.tau) {
      rep.near_boundary = true;
    }
    if (v < -rep.tau) ok = false;
  }
  rep.feasible = ok;
  return rep;
}

FeasibilityReport check_lp_feasible(const SphereTriangulation& t, const SpherePoint& pole,
                                    const std::vector<double>& z, Tolerance tol) {
  return check_lp_feasible(build_sink_system(t, pole, tol), z);
}

std::vector<double> ah_embed(const SphereTriangulation& t, const FaceClassification& fc,
                             const ShellingOrder& order) {
  if (!is_valid_shelling_order(t, fc, order)) throw std::invalid_argument("ah_embed: not a shelling order");
  const Rotation frame = Rotation::pole_to_north(fc.pole);
  std::vector<SpherePoint> p;
  p.reserve(t.num_vertices());
  for (const auto& v : t.vertices()) p.push_back(frame(v));

  std::vector<double> z(t.num_vertices(), 0.0);
  std::vector<char> placed(t.num_vertices(), 0);
  for (int v : t.face(order.front())) {
    z[v] = -1.0;
    placed[v] = 1;
  }
  for (std::size_t k = 1; k < order.size(); ++k) {
    const int f = order[k];
    const Face& tri = t.face(f);
    int open = -1, count = 0;
    for (int a = 0; a < 3; ++a) {
      if (!placed[tri[a]]) {
        open = a;
        ++count;
      }
    }
    if (count == 0) continue;
    const FaceLabel label = fc.labels[f];
    if (count > 1 || (label != FaceLabel::Down && label != FaceLabel::Seam)) {
      throw std::invalid_argument("ah_embed: face " + std::to_string(f) + " reached with unplaced vertices");
    }
    const auto c = height_cofactors(p[tri[0]], p[tri[1]], p[tri[2]]);
    if (std::abs(c[open]) == 0.0) throw std::invalid_argument("ah_embed: apex lies above its base edge");
    double rest = 0.0;
    for (int a = 0; a < 3; ++a)
      if (a != open) rest += c[a] * z[tri[a]];
    z[tri[open]] = -rest / c[open];
    placed[tri[open]] = 1;
  }
  for (int v = 0; v < t.num_vertices(); ++v)
    if (!placed[v]) throw std::invalid_argument("ah_embed: vertex " + std::to_string(v) + " never placed");
  return z;
}

std::vector<double> ah_embed(const SphereTriangulation& t, const SpherePoint& pole, const ShellingOrder& order,
                             Tolerance tol) {
  return ah_embed(t, classify_faces(t, pole, tol, true), order);
}

const char* to_string(SinkVerdict v) {
  switch (v) {
    case SinkVerdict::Sinkable: return "sinkable";
    case SinkVerdict::Unsinkable: return "unsinkable";
    case SinkVerdict::Singular: return "singular";
  }
  return "?";
}

SinkResult is_sinkable(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol) {
  const SinkSystem s = build_sink_system(t, pole, tol);
  SinkResult out;
  const SinkSolve sol = solve_sink_system(s, &out.pivot_ratio);
  if (const auto* sing = std::get_if<Singular>(&sol)) {
    out.verdict = SinkVerdict::Singular;
    out.pivot_ratio = sing->pivot_ratio;
    return out;
  }
  out.z = std::get<std::vector<double>>(sol);
  double num = 0.0, den = 0.0;
  for (int r = 0; r < s.size(); ++r) {
    const double e = s.evaluate(r, out.z) - s.rows[r].rhs;
    double scale = 0.0;
    for (int k = 0; k < s.rows[r].terms; ++k) scale = std::max(scale, std::abs(s.rows[r].coef[k]));
    num += (e / scale) * (e / scale);
    den += (s.rows[r].rhs / scale) * (s.rows[r].rhs / scale);
  }
  out.residual = std::sqrt(num / std::max(den, 1.0));
  out.diagnostics = check_lp_feasible(s, out.z);
  out.verdict = out.diagnostics.feasible ? SinkVerdict::Sinkable : SinkVerdict::Unsinkable;
  return out;
}

std::vector<SpherePoint> blend_heights(const std::vector<SpherePoint>& pts, const std::vector<double>& z, double s) {
  std::vector<SpherePoint> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = {pts[i].x, pts[i].y, (1.0 - s) * pts[i].z + s * z[i]};
  return out;
}

double proper_sink_parameter(const std::vector<SpherePoint>& pts, const std::vector<double>& z) {
  double s0 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].z >= 0.0) s0 = std::max(s0, pts[i].z / (pts[i].z - z[i]));
  }
  return 0.5 * (s0 + 1.0);
}

}  // namespace sphmorph
