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

#include "sphmorph/shelling.hpp"

#include <algorithm>
#include <queue>

namespace sphmorph {

std::vector<std::vector<int>> DirectedView::adjacency() const {
  std::vector<std::vector<int>> adj(num_nodes);
  for (auto [a, b] : edges) adj[a].push_back(b);
  return adj;
}

DirectedView build_view(const SphereTriangulation& t, const FaceClassification& fc, ViewKind kind) {
  DirectedView g{kind, fc.pole, 0, {}};
  const Topology& topo = t.topology();
  switch (kind) {
    case ViewKind::DownDual:
      g.num_nodes = t.num_faces();
      for (int f = 0; f < t.num_faces(); ++f)
        for (int k = 0; k < 3; ++k)
          if (fc.dual_dir[f][k] > 0) g.edges.emplace_back(f, topo.adjacent_face(f, k));
      break;
    case ViewKind::OrientedPrimal:
      g.num_nodes = t.num_vertices();
      // Dart i -> j with vol(pole, i, j) > 0 means j is east of i. Longitudinal
      // edges (seam refinements only) are traversable both ways.
      for (int f = 0; f < t.num_faces(); ++f) {
        const Face& tri = t.face(f);
        for (int k = 0; k < 3; ++k) {
          const int i = tri[k], j = tri[(k + 1) % 3];
          if (fc.dual_dir[f][k] > 0) g.edges.emplace_back(i, j);
          else if (fc.dual_dir[f][k] == 0 && i < j) {
            g.edges.emplace_back(i, j);
            g.edges.emplace_back(j, i);
          }
        }
      }
      break;
    case ViewKind::LegGraph:
      g.num_nodes = t.num_vertices();
      for (int f = 0; f < t.num_faces(); ++f) {
        if (fc.labels[f] != FaceLabel::Down) continue;
        const Face& tri = t.face(f);
        const int b = fc.base_edge[f];
        const int apex = fc.apex[f];
        g.edges.emplace_back(tri[b], apex);
        g.edges.emplace_back(tri[(b + 1) % 3], apex);
      }
      break;
  }
  return g;
}

DirectedView build_view(const SphereTriangulation& t, const SpherePoint& pole, ViewKind kind, Tolerance tol) {
  return build_view(t, classify_faces(t, pole, tol), kind);
}

bool has_directed_cycle(const DirectedView& g) {
  // Kahn: a cycle remains iff some node is never released.
  std::vector<int> indeg(g.num_nodes, 0);
  for (auto [a, b] : g.edges) ++indeg[b];
  const auto adj = g.adjacency();
  std::vector<int> stack;
  for (int v = 0; v < g.num_nodes; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int released = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++released;
    for (int w : adj[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  return released != g.num_nodes;
}

std::vector<char> reachable_from(const DirectedView& g, const std::vector<int>& sources) {
  const auto adj = g.adjacency();
  std::vector<char> seen(g.num_nodes, 0);
  std::queue<int> q;
  for (int s : sources)
    if (!seen[s]) seen[s] = 1, q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) seen[w] = 1, q.push(w);
  }
  return seen;
}

bool is_strongly_connected(const DirectedView& g) {
  if (g.num_nodes == 0) return true;
  const auto fwd = reachable_from(g, {0});
  if (std::find(fwd.begin(), fwd.end(), 0) != fwd.end()) return false;
  DirectedView rev{g.kind, g.pole, g.num_nodes, {}};
  rev.edges.reserve(g.edges.size());
  for (auto [a, b] : g.edges) rev.edges.emplace_back(b, a);
  const auto bwd = reachable_from(rev, {0});
  return std::find(bwd.begin(), bwd.end(), 0) == bwd.end();
}

const char* to_string(ShellMethod m) {
  switch (m) {
    case ShellMethod::AcyclicDual: return "b";
    case ShellMethod::StronglyConnected: return "c";
    case ShellMethod::PolarPaths: return "d";
    case ShellMethod::AcyclicLegs: return "e";
  }
  return "?";
}

bool is_shellable(const SphereTriangulation& t, const FaceClassification& fc, ShellMethod method) {
  switch (method) {
    case ShellMethod::AcyclicDual:
      return !has_directed_cycle(build_view(t, fc, ViewKind::DownDual));
    case ShellMethod::StronglyConnected:
      return is_strongly_connected(build_view(t, fc, ViewKind::OrientedPrimal));
    case ShellMethod::PolarPaths: {
      const DirectedView g = build_view(t, fc, ViewKind::OrientedPrimal);
      const Face& nf = t.face(fc.north_face);
      const Face& sf = t.face(fc.south_face);
      const auto down = reachable_from(g, {nf[0], nf[1], nf[2]});
      const auto up = reachable_from(g, {sf[0], sf[1], sf[2]});
      const bool to_south = down[sf[0]] || down[sf[1]] || down[sf[2]];
      const bool to_north = up[nf[0]] || up[nf[1]] || up[nf[2]];
      return to_south && to_north;
    }
    case ShellMethod::AcyclicLegs:
      return !has_directed_cycle(build_view(t, fc, ViewKind::LegGraph));
  }
  return false;
}

bool is_shellable(const SphereTriangulation& t, const SpherePoint& pole, ShellMethod method, Tolerance tol) {
  return is_shellable(t, classify_faces(t, pole, tol), method);
}

ShellingOrder shelling_order(const SphereTriangulation& t, const FaceClassification& fc) {
  const DirectedView g = build_view(t, fc, ViewKind::DownDual);
  std::vector<int> indeg(g.num_nodes, 0);
  for (auto [a, b] : g.edges) ++indeg[b];
  const auto adj = g.adjacency();
  ShellingOrder order;
  order.reserve(g.num_nodes);
  std::queue<int> q;
  // The north face is the only source in a generic view; seam refinements may
  // add others, so the north face is forced to the front.
  q.push(fc.north_face);
  for (int v = 0; v < g.num_nodes; ++v)
    if (indeg[v] == 0 && v != fc.north_face) q.push(v);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    order.push_back(v);
    for (int w : adj[v])
      if (--indeg[w] == 0) q.push(w);
  }
  if (static_cast<int>(order.size()) != g.num_nodes || indeg[fc.north_face] != 0) {
    throw NotShellable("dual graph has a directed cycle");
  }
  return order;
}

ShellingOrder shelling_order(const SphereTriangulation& t, const SpherePoint& pole, Tolerance tol) {
  return shelling_order(t, classify_faces(t, pole, tol));
}

bool is_valid_shelling_order(const SphereTriangulation& t, const FaceClassification& fc,
                             const ShellingOrder& order) {
  const int nf = t.num_faces();
  if (static_cast<int>(order.size()) != nf || order.empty() || order.front() != fc.north_face) return false;
  std::vector<int> pos(nf, -1);
  for (int k = 0; k < nf; ++k) {
    if (order[k] < 0 || order[k] >= nf || pos[order[k]] >= 0) return false;
    pos[order[k]] = k;
  }
  for (auto [a, b] : build_view(t, fc, ViewKind::DownDual).edges)
    if (pos[a] >= pos[b]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Direction search

namespace {

struct Candidate {
  SpherePoint corner;  // arrangement vertex
  SpherePoint dir;     // unit tangent into a wedge
  double delta;        // initial offset
  double room;         // distance to the nearest circle missing the corner
};

std::vector<SpherePoint> edge_circles(const SphereTriangulation& t) {
  std::vector<SpherePoint> circles;
  for (const Edge& e : t.edges()) {
    SpherePoint nrm = cross(t.vertex(e.a).normalized(), t.vertex(e.b).normalized());
    if (nrm.norm() < 1e-12) continue;
    nrm = nrm.normalized();
    // Canonical sign so both orientations of one circle compare equal.
    const double lead = std::abs(nrm.x) > 1e-12 ? nrm.x : (std::abs(nrm.y) > 1e-12 ? nrm.y : nrm.z);
    if (lead < 0) nrm = -nrm;
    bool dup = false;
    for (const auto& c : circles)
      if ((c - nrm).norm() < 1e-10) dup = true;
    if (!dup) circles.push_back(nrm);
  }
  return circles;
}

std::vector<Candidate> candidate_list(const SphereTriangulation& t, Tolerance tol) {
  const auto circles = edge_circles(t);
  const double delta0 = std::max(10.0 * tol.rel, 1e-6);
  std::vector<Candidate> out;
  const std::size_t m = circles.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      SpherePoint x = cross(circles[a], circles[b]);
      if (x.norm() < 1e-12) continue;
      x = x.normalized();
      for (const SpherePoint& s : {x, -x}) {
        double room = 1.0;
        for (const auto& c : circles) {
          const double d = std::abs(dot(c, s));
          if (d > 1e-12) room = std::min(room, std::asin(std::min(1.0, d)));
        }
        const double delta = std::min(delta0, 0.5 * room);
        const SpherePoint ta = cross(circles[a], s);
        const SpherePoint tb = cross(circles[b], s);
        for (double sa : {1.0, -1.0})
          for (double sb : {1.0, -1.0}) {
            const SpherePoint d = sa * ta + sb * tb;
            out.push_back({s, d.normalized(), delta, room});
          }
      }
    }
  }
  return out;
}

SpherePoint offset(const Candidate& c, double delta) { return (c.corner + delta * c.dir).normalized(); }

}  // namespace

std::vector<SpherePoint> shelling_candidates(const SphereTriangulation& t, Tolerance tol) {
  std::vector<SpherePoint> out;
  for (const auto& c : candidate_list(t, tol)) out.push_back(offset(c, c.delta));
  return out;
}

std::optional<SpherePoint> find_shelling_direction(const SphereTriangulation& t, Tolerance tol,
                                                   ShellSearchStats* stats) {
  ShellSearchStats local;
  ShellSearchStats& st = stats ? *stats : local;
  st = {};
  auto try_pole = [&](const SpherePoint& p) -> int {
    ++st.tested;
    try {
      return is_shellable(t, p, ShellMethod::AcyclicDual, tol) ? 1 : 0;
    } catch (const DegenerateDirection&) {
      ++st.degenerate;
      return -1;
    }
  };
  if (try_pole(kNorthPole) == 1) return kNorthPole;
  const auto cands = candidate_list(t, tol);
  st.circles = edge_circles(t).size();
  st.candidates = cands.size();
  for (const auto& c : cands) {
    // Shrink first; widen only while the offset stays inside the corner's cells.
    for (double delta : {c.delta, c.delta / 10.0, std::min(10.0 * c.delta, 0.5 * c.room)}) {
      const SpherePoint p = offset(c, delta);
      const int r = try_pole(p);
      if (r == 1) return p;
      if (r == 0) break;
    }
  }
  return std::nullopt;
}

bool dart_hemisphere_contains(const SphereTriangulation& t, int i, int j, const SpherePoint& p, Tolerance tol) {
  return vol_sign(p, t.vertex(i), t.vertex(j), tol) > 0;
}

}  // namespace sphmorph
