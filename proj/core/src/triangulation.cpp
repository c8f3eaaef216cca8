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

#include "sphmorph/triangulation.hpp"

#include <algorithm>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

namespace sphmorph {

namespace {

std::uint64_t dart_key(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) | static_cast<std::uint32_t>(j);
}

// Signed spherical excess of the triangle a, b, c (unit-normalized inside).
double signed_excess(SpherePoint a, SpherePoint b, SpherePoint c) {
  a = a.normalized();
  b = b.normalized();
  c = c.normalized();
  const double num = vol(a, b, c);
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

double scale3(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c) {
  return a.norm() * b.norm() * c.norm();
}

}  // namespace

// ---------------------------------------------------------------------------

Topology::Topology(int num_vertices, std::vector<Face> faces) : n_(num_vertices), faces_(std::move(faces)) {
  if (n_ < 0) throw InvalidTriangulation("negative vertex count");
  const int nf = num_faces();
  for (int f = 0; f < nf; ++f) {
    for (int v : faces_[f]) {
      if (v < 0 || v >= n_) {
        std::ostringstream os;
        os << "face " << f << " references vertex " << v << " outside [0, " << n_ << ")";
        throw InvalidTriangulation(os.str());
      }
    }
  }
  auto report = [&](ViolationKind k, int f, std::string msg) {
    problems_.push_back(Violation{k, f, 0.0, std::move(msg)});
  };

  if (n_ < 4) report(ViolationKind::TooFewVertices, -1, "fewer than 4 vertices");
  if (nf != 2 * n_ - 4) {
    report(ViolationKind::FaceCount, -1,
           "face count " + std::to_string(nf) + " != 2n-4 = " + std::to_string(2 * n_ - 4));
  }

  vertex_faces_.assign(n_, {});
  darts_.reserve(3 * nf);
  for (int f = 0; f < nf; ++f) {
    const Face& t = faces_[f];
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      report(ViolationKind::RepeatedVertex, f, "face " + std::to_string(f) + " repeats a vertex");
    }
    for (int k = 0; k < 3; ++k) {
      darts_.emplace_back(dart_key(t[k], t[(k + 1) % 3]), f);
      if (k == 0 || t[k] != t[k - 1]) vertex_faces_[t[k]].push_back(f);
    }
  }
  std::sort(darts_.begin(), darts_.end());
  for (std::size_t d = 1; d < darts_.size(); ++d) {
    if (darts_[d].first == darts_[d - 1].first) {
      const int i = static_cast<int>(darts_[d].first >> 32);
      const int j = static_cast<int>(darts_[d].first & 0xffffffffu);
      report(ViolationKind::DuplicateDart, darts_[d].second,
             "dart " + std::to_string(i) + "->" + std::to_string(j) + " appears in more than one face");
    }
  }

  adjacent_.assign(nf, {-1, -1, -1});
  for (int f = 0; f < nf; ++f) {
    const Face& t = faces_[f];
    for (int k = 0; k < 3; ++k) {
      const int i = t[k], j = t[(k + 1) % 3];
      const int g = face_left_of(j, i);
      adjacent_[f][k] = g;
      if (g < 0) {
        report(ViolationKind::UnpairedDart, f,
               "dart " + std::to_string(i) + "->" + std::to_string(j) + " has no reverse");
      }
      if (i < j) edges_.push_back({i, j});
      else if (g < 0) edges_.push_back({j, i});
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  if (static_cast<int>(edges_.size()) != 3 * n_ - 6) {
    report(ViolationKind::EdgeCount, -1,
           "edge count " + std::to_string(edges_.size()) + " != 3n-6 = " + std::to_string(3 * n_ - 6));
  }

  // Dual connectivity.
  if (nf > 0) {
    std::vector<char> seen(nf, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      for (int g : adjacent_[f]) {
        if (g >= 0 && !seen[g]) {
          seen[g] = 1;
          ++count;
          q.push(g);
        }
      }
    }
    if (count != nf) report(ViolationKind::DisconnectedDual, -1, "dual graph is disconnected");
  }

  // Every vertex star must be a single closed fan.
  if (problems_.empty()) {
    for (int v = 0; v < n_; ++v) {
      if (vertex_faces_[v].empty()) {
        report(ViolationKind::NonManifoldVertex, -1, "vertex " + std::to_string(v) + " is isolated");
        continue;
      }
      if (neighbors_ccw(v).size() != vertex_faces_[v].size()) {
        report(ViolationKind::NonManifoldVertex, -1, "star of vertex " + std::to_string(v) + " is not a disk");
      }
    }
  }
}

int Topology::face_left_of(int i, int j) const {
  const std::uint64_t key = dart_key(i, j);
  auto it = std::lower_bound(darts_.begin(), darts_.end(), std::make_pair(key, -1));
  if (it == darts_.end() || it->first != key) return -1;
  return it->second;
}

std::vector<int> Topology::neighbors_ccw(int v) const {
  std::vector<int> out;
  const auto& star = vertex_faces_[v];
  if (star.empty()) return out;
  // Face (v, a, b) CCW: after neighbor a comes b.
  auto next_of = [&](int f) {
    const Face& t = faces_[f];
    const int k = t[0] == v ? 0 : (t[1] == v ? 1 : 2);
    return std::make_pair(t[(k + 1) % 3], t[(k + 2) % 3]);
  };
  const int f0 = star.front();
  auto [a0, b] = next_of(f0);
  out.push_back(a0);
  int guard = 0;
  while (b != a0) {
    out.push_back(b);
    const int f = face_left_of(v, b);
    if (f < 0 || ++guard > static_cast<int>(star.size())) return {};
    b = next_of(f).second;
  }
  return out;
}

// ---------------------------------------------------------------------------

SphereTriangulation::SphereTriangulation(std::vector<SpherePoint> vertices, std::vector<Face> faces)
    : topology_(std::make_shared<const Topology>(static_cast<int>(vertices.size()), std::move(faces))),
      vertices_(std::move(vertices)) {}

SphereTriangulation::SphereTriangulation(std::shared_ptr<const Topology> topology, std::vector<SpherePoint> vertices)
    : topology_(std::move(topology)), vertices_(std::move(vertices)) {
  if (!topology_) throw InvalidTriangulation("null topology");
  if (static_cast<int>(vertices_.size()) != topology_->num_vertices()) {
    throw InvalidTriangulation("vertex count does not match topology");
  }
}

double SphereTriangulation::face_vol(int f) const {
  const Face& t = face(f);
  return vol(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
}

SphereTriangulation SphereTriangulation::with_vertices(std::vector<SpherePoint> vertices) const {
  return SphereTriangulation(topology_, std::move(vertices));
}

SphereTriangulation SphereTriangulation::rotated(const Rotation& r) const {
  std::vector<SpherePoint> v;
  v.reserve(vertices_.size());
  for (const auto& p : vertices_) v.push_back(r(p));
  return with_vertices(std::move(v));
}

// ---------------------------------------------------------------------------

std::string ValidationReport::summary() const {
  if (violations.empty()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].message;
  }
  return os.str();
}

double face_area(const SphereTriangulation& t, int f) {
  const Face& tri = t.face(f);
  const double e = signed_excess(t.vertex(tri[0]), t.vertex(tri[1]), t.vertex(tri[2]));
  return e >= 0 ? e : 4.0 * std::numbers::pi + e;
}

bool face_contains(const SphereTriangulation& t, int f, const SpherePoint& p, Tolerance tol) {
  const Face& tri = t.face(f);
  const SpherePoint& a = t.vertex(tri[0]);
  const SpherePoint& b = t.vertex(tri[1]);
  const SpherePoint& c = t.vertex(tri[2]);
  const int s1 = vol_sign(p, a, b, tol), s2 = vol_sign(p, b, c, tol), s3 = vol_sign(p, c, a, tol);
  if (vol(a, b, c) > 0) return s1 > 0 && s2 > 0 && s3 > 0;
  // Everted face: complement of the small triangle (c, b, a).
  return s1 > 0 || s2 > 0 || s3 > 0;
}

ValidationReport validate(const SphereTriangulation& t, Tolerance tol) {
  ValidationReport rep;
  rep.violations = t.topology().problems();
  if (!rep.ok()) return rep;

  for (int i = 0; i < t.num_vertices(); ++i) {
    if (t.vertex(i).norm() == 0.0) {
      rep.violations.push_back({ViolationKind::NonPositiveFace, -1, 0.0,
                                "vertex " + std::to_string(i) + " is the zero vector"});
      return rep;
    }
  }

  int everted = -1;
  double total = 0.0;
  for (int f = 0; f < t.num_faces(); ++f) {
    const Face& tri = t.face(f);
    const SpherePoint& a = t.vertex(tri[0]);
    const SpherePoint& b = t.vertex(tri[1]);
    const SpherePoint& c = t.vertex(tri[2]);
    const double v = vol(a, b, c);
    if (std::abs(v) <= tol.rel * scale3(a, b, c)) {
      rep.violations.push_back({ViolationKind::NonPositiveFace, f, v,
                                "face " + std::to_string(f) + " is degenerate (vol " + std::to_string(v) + ")"});
      continue;
    }
    if (v < 0) {
      if (everted >= 0) {
        rep.violations.push_back({ViolationKind::MultipleNonPositiveFaces, f, v,
                                  "face " + std::to_string(f) + " is inverted (faces " + std::to_string(everted) +
                                      " and " + std::to_string(f) + " both have negative vol)"});
        continue;
      }
      everted = f;
    }
    total += face_area(t, f);
  }
  if (!rep.ok()) return rep;

  const double target = 4.0 * std::numbers::pi;
  if (std::abs(total - target) > 1e-7 * t.num_faces()) {
    rep.violations.push_back({ViolationKind::AreaMismatch, everted, total,
                              "face areas sum to " + std::to_string(total) + ", not 4pi (faces overlap)"});
  }
  return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(FaceLabel label) {
  switch (label) {
    case FaceLabel::North: return "north";
    case FaceLabel::South: return "south";
    case FaceLabel::Up: return "up";
    case FaceLabel::Down: return "down";
    case FaceLabel::Seam: return "seam";
  }
  return "?";
}

int FaceClassification::count(FaceLabel label) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), label));
}

FaceClassification classify_faces(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol,
                                  bool allow_longitudinal_edges) {
  if (pole.norm() == 0.0) throw DomainError("pole must be nonzero");
  const int nf = t.num_faces();
  const int n = t.num_vertices();
  FaceClassification fc;
  fc.pole = pole;
  fc.labels.assign(nf, FaceLabel::Up);
  fc.dual_dir.assign(nf, {0, 0, 0});
  fc.apex.assign(nf, -1);
  fc.base_edge.assign(nf, -1);
  fc.face_above.assign(n, -1);
  fc.face_below.assign(n, -1);

  for (int f = 0; f < nf; ++f) {
    const Face& tri = t.face(f);
    int in = 0, out = 0, vert = 0, in_k = -1, out_k = -1;
    for (int k = 0; k < 3; ++k) {
      const int s = vol_sign(pole, t.vertex(tri[k]), t.vertex(tri[(k + 1) % 3]), tol);
      fc.dual_dir[f][k] = s;
      if (s > 0) {
        ++out;
        out_k = k;
      } else if (s < 0) {
        ++in;
        in_k = k;
      } else {
        ++vert;
      }
    }
    if (vert > 0) {
      if (!allow_longitudinal_edges) {
        throw DegenerateDirection("edge of face " + std::to_string(f) + " lies on a great circle through the pole");
      }
      fc.has_longitudinal_edges = true;
    }
    if (in == 0) {
      fc.labels[f] = FaceLabel::North;
    } else if (out == 0) {
      fc.labels[f] = FaceLabel::South;
    } else if (vert > 0) {
      fc.labels[f] = FaceLabel::Seam;
    } else if (in == 1) {
      fc.labels[f] = FaceLabel::Down;
      fc.base_edge[f] = in_k;
      fc.apex[f] = tri[(in_k + 2) % 3];
    } else {
      fc.labels[f] = FaceLabel::Up;
      fc.base_edge[f] = out_k;
      fc.apex[f] = tri[(out_k + 2) % 3];
    }
    if (fc.labels[f] == FaceLabel::North) {
      if (fc.north_face >= 0) throw DegenerateDirection("more than one north face");
      fc.north_face = f;
    } else if (fc.labels[f] == FaceLabel::South) {
      if (fc.south_face >= 0) throw DegenerateDirection("more than one south face");
      fc.south_face = f;
    }
  }
  if (fc.north_face < 0 || fc.south_face < 0) throw DegenerateDirection("missing polar face");

  for (int v : t.face(fc.north_face)) fc.face_above[v] = fc.north_face;
  for (int v : t.face(fc.south_face)) fc.face_below[v] = fc.south_face;
  for (int f = 0; f < nf; ++f) {
    if (fc.labels[f] == FaceLabel::Down) {
      int& slot = fc.face_above[fc.apex[f]];
      if (slot >= 0 && !fc.has_longitudinal_edges) {
        throw DegenerateDirection("vertex " + std::to_string(fc.apex[f]) + " is the apex of two down-faces");
      }
      slot = f;
    } else if (fc.labels[f] == FaceLabel::Up) {
      int& slot = fc.face_below[fc.apex[f]];
      if (slot >= 0 && !fc.has_longitudinal_edges) {
        throw DegenerateDirection("vertex " + std::to_string(fc.apex[f]) + " is the apex of two up-faces");
      }
      slot = f;
    }
  }
  if (!fc.has_longitudinal_edges) {
    if (fc.count(FaceLabel::Down) != n - 3 || fc.count(FaceLabel::Up) != n - 3) {
      throw DegenerateDirection("down/up face counts differ from n-3");
    }
    for (int v = 0; v < n; ++v) {
      if (fc.face_above[v] < 0 || fc.face_below[v] < 0) {
        throw DegenerateDirection("vertex " + std::to_string(v) + " has no face directly above or below");
      }
    }
  }
  return fc;
}

GenericityReport genericity(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol,
                            std::size_t triple_samples, std::uint64_t seed) {
  GenericityReport rep;
  const int n = t.num_vertices();
  const auto& v = t.vertices();
  for (const Edge& e : t.edges()) {
    const SpherePoint& a = v[e.a];
    const SpherePoint& b = v[e.b];
    if (cross(a, b).norm() <= tol.rel * a.norm() * b.norm() && dot(a, b) < 0) rep.antipodal_edges.push_back(e);
  }
  auto check_triple = [&](int i, int j, int k) {
    if (vol_sign(v[i], v[j], v[k], tol) == 0) rep.coplanar_triples.push_back({i, j, k});
  };
  if (triple_samples == 0) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) check_triple(i, j, k);
  } else if (n >= 3) {
    rep.triples_sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::size_t s = 0; s < triple_samples; ++s) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      if (a == b || b == c || a == c) continue;
      std::array<int, 3> tr{a, b, c};
      std::sort(tr.begin(), tr.end());
      check_triple(tr[0], tr[1], tr[2]);
    }
    std::sort(rep.coplanar_triples.begin(), rep.coplanar_triples.end());
    rep.coplanar_triples.erase(std::unique(rep.coplanar_triples.begin(), rep.coplanar_triples.end()),
                               rep.coplanar_triples.end());
  }
  const Rotation r = Rotation::pole_to_north(pole);
  std::vector<SpherePoint> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = r(v[i]);
    if (std::hypot(w[i].x, w[i].y) <= tol.rel * w[i].norm()) rep.vertices_at_pole.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (east_of(w[i], w[j], tol) == 0) rep.shared_longitudes.emplace_back(i, j);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

FlipResult flip_edge(const SphereTriangulation& t, int i, int j, Tolerance tol) {
  const Topology& topo = t.topology();
  if (i < 0 || j < 0 || i >= t.num_vertices() || j >= t.num_vertices()) return NotFlippable{"vertex out of range"};
  const int f = topo.face_left_of(i, j);
  const int g = topo.face_left_of(j, i);
  if (f < 0 || g < 0) return NotFlippable{"not an edge"};
  auto opposite = [&](int face, int a, int b) {
    for (int x : topo.face(face))
      if (x != a && x != b) return x;
    return -1;
  };
  const int k = opposite(f, i, j);
  const int l = opposite(g, i, j);
  if (k == l || topo.has_edge(k, l)) return NotFlippable{"replacement edge already present"};
  const auto& v = t.vertices();
  if (vol_sign(v[i], v[l], v[k], tol) <= 0 || vol_sign(v[j], v[k], v[l], tol) <= 0) {
    return NotFlippable{"incident faces do not form a convex quadrilateral"};
  }
  std::vector<Face> faces = topo.faces();
  faces[f] = {i, l, k};
  faces[g] = {j, k, l};
  return SphereTriangulation(v, std::move(faces));
}

}  // namespace sphmorph
