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

#include "sphmorph/refine.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace sphmorph {

namespace {

constexpr double kEndpointGap = 1e-6;

int local_index(const Face& f, int v) {
  for (int k = 0; k < 3; ++k)
    if (f[k] == v) return k;
  return -1;
}

int edge_slot(const Face& f, int a, int b) {
  for (int k = 0; k < 3; ++k)
    if (make_edge(f[k], f[(k + 1) % 3]) == make_edge(a, b)) return k;
  return -1;
}

}  // namespace

SeamRefinement refine_along_seam(const SphereTriangulation& t, const SpherePoint& pole, int v, Tolerance tol) {
  const FaceClassification fc = classify_faces(t, pole, tol);
  const Topology& topo = t.topology();
  if (v < 0 || v >= t.num_vertices() || local_index(t.face(fc.north_face), v) < 0) {
    throw DegenerateDirection("seam vertex must lie on the north face");
  }
  const Rotation frame = Rotation::pole_to_north(pole);
  const Rotation back = frame.inverse();
  std::vector<SpherePoint> p;
  for (const auto& q : t.vertices()) p.push_back(frame(q).normalized());
  const SpherePoint nrm = SpherePoint{-p[v].y, p[v].x, 0.0}.normalized();
  const SpherePoint half{p[v].x, p[v].y, 0.0};

  // Crossing of edge ab with the longitude, or nullopt.
  auto crossing = [&](int a, int b) -> std::optional<SpherePoint> {
    const double sa = dot(nrm, p[a]), sb = dot(nrm, p[b]);
    if ((sa > 0) == (sb > 0) || sa == 0.0 || sb == 0.0) return std::nullopt;
    const SpherePoint q = (-sb) * p[a] + sa * p[b];
    if (sa < 0) {
      // Keep both weights positive so q lies between a and b.
      const SpherePoint r = sb * p[a] + (-sa) * p[b];
      if (dot(r, half) <= 0) return std::nullopt;
      return r.normalized();
    }
    if (dot(q, half) <= 0) return std::nullopt;
    return q.normalized();
  };

  SeamRefinement out{t, pole, v, t.num_vertices(), t.num_faces(), {}, {}};
  std::vector<SpherePoint> verts = t.vertices();
  std::vector<Face> faces = t.faces();
  out.face_map.assign(t.num_faces(), {});
  for (int f = 0; f < t.num_faces(); ++f) out.face_map[f] = {f};

  auto add_bend = [&](int a, int b, const SpherePoint& q) {
    if (angle_between(q, p[a]) < kEndpointGap || angle_between(q, p[b]) < kEndpointGap) {
      throw DegenerateDirection("seam passes too close to vertex " + std::to_string(a) + " or " + std::to_string(b));
    }
    const int id = static_cast<int>(verts.size());
    verts.push_back(back(q));
    out.bends.emplace_back(make_edge(a, b), id);
    return id;
  };
  auto replace = [&](int f, std::vector<Face> parts) {
    faces[f] = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) {
      out.face_map[f].push_back(static_cast<int>(faces.size()));
      faces.push_back(parts[k]);
    }
  };
  // Splits face f = (A, B, C) with bend q on edge AB into (A, q, C), (q, B, C).
  auto split_two = [&](int f, int a, int b, int q) {
    const Face& tri = t.face(f);
    const int k = edge_slot(tri, a, b);
    const int A = tri[k], B = tri[(k + 1) % 3], C = tri[(k + 2) % 3];
    replace(f, {{A, q, C}, {q, B, C}});
  };

  int f = fc.face_below[v];
  if (f < 0) throw DegenerateDirection("no face below the seam vertex");
  {
    const Face& tri = t.face(f);
    const int k = local_index(tri, v);
    const int a = tri[(k + 1) % 3], b = tri[(k + 2) % 3];
    if (f == fc.south_face) {
      // The seam runs from v straight into the south face and crosses nothing.
      out.refined = SphereTriangulation(std::move(verts), std::move(faces));
      return out;
    }
    auto q = crossing(a, b);
    if (!q) throw DegenerateDirection("seam misses the edge opposite the seam vertex");
    int qa = add_bend(a, b, *q);
    split_two(f, a, b, qa);
    int ea = a, eb = b;
    for (int guard = 0; guard <= t.num_faces(); ++guard) {
      const int g = topo.face_left_of(eb, ea);
      if (g < 0) throw DegenerateDirection("open edge on seam walk");
      if (g == fc.south_face) {
        split_two(g, ea, eb, qa);
        out.refined = SphereTriangulation(std::move(verts), std::move(faces));
        return out;
      }
      const Face& tg = t.face(g);
      const int k_in = edge_slot(tg, ea, eb);
      int k_out = -1;
      std::optional<SpherePoint> q_out;
      for (int d : {1, 2}) {
        const int k = (k_in + d) % 3;
        auto q2 = crossing(tg[k], tg[(k + 1) % 3]);
        if (q2) {
          if (k_out >= 0) throw DegenerateDirection("seam crosses a face twice");
          k_out = k;
          q_out = q2;
        }
      }
      if (k_out < 0) throw DegenerateDirection("seam ends inside a non-polar face");
      const int na = tg[k_out], nb = tg[(k_out + 1) % 3];
      const int qb = add_bend(na, nb, *q_out);
      // Edges k and k+1 (cyclic) share the corner vertex tg[k+1].
      const bool in_first = (k_out == (k_in + 1) % 3);
      const int k = in_first ? k_in : k_out;
      const int A = tg[k], B = tg[(k + 1) % 3], C = tg[(k + 2) % 3];
      const int pAB = in_first ? qa : qb;  // bend on edge AB
      const int rBC = in_first ? qb : qa;  // bend on edge BC
      auto mv = [&](int x, int y, int z) {
        return vol(verts[x], verts[y], verts[z]);
      };
      const double d1 = std::min(mv(A, pAB, rBC), mv(A, rBC, C));
      const double d2 = std::min(mv(A, pAB, C), mv(pAB, rBC, C));
      if (d1 >= d2) replace(g, {{pAB, B, rBC}, {A, pAB, rBC}, {A, rBC, C}});
      else replace(g, {{pAB, B, rBC}, {A, pAB, C}, {pAB, rBC, C}});
      qa = qb;
      ea = na;
      eb = nb;
    }
  }
  throw DegenerateDirection("seam walk did not reach the south face");
}

SphereTriangulation refine_like(const SeamRefinement& ref, const SphereTriangulation& other,
                                const std::vector<SpherePoint>& bend_points) {
  if (other.num_vertices() != ref.original_vertices || bend_points.size() != ref.bends.size()) {
    throw std::invalid_argument("refine_like: size mismatch");
  }
  std::vector<SpherePoint> v = other.vertices();
  v.insert(v.end(), bend_points.begin(), bend_points.end());
  return ref.refined.with_vertices(std::move(v));
}

std::vector<SpherePoint> edge_midpoints(const SeamRefinement& ref, const SphereTriangulation& other) {
  std::vector<SpherePoint> out;
  for (const auto& [e, id] : ref.bends) {
    (void)id;
    out.push_back((other.vertex(e.a).normalized() + other.vertex(e.b).normalized()).normalized());
  }
  return out;
}

}  // namespace sphmorph
