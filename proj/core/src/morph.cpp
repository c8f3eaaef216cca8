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


#include "sphmorph/morph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "sphmorph/coherent.hpp"
#include "sphmorph/shelling.hpp"
#include "sphmorph/sinking.hpp"

namespace sphmorph {

const char* to_string(StageKind k) {
  switch (k) {
    case StageKind::Rotate: return "rotate";
    case StageKind::Longitudinal: return "longitudinal";
    case StageKind::RotatedLongitudinal: return "rotated_longitudinal";
    case StageKind::PlanarBarycentric: return "planar_barycentric";
  }
  return "?";
}

std::vector<SpherePoint> MorphStage::at(double t) const {
  const double s = reversed ? 1.0 - t : t;
  std::vector<SpherePoint> out;
  switch (kind) {
    case StageKind::Rotate: {
      if (s == 0.0 || angle == 0.0) return start;
      const Rotation r = Rotation::about_axis(axis, s * angle);
      out.reserve(start.size());
      for (const auto& p : start) out.push_back(r(p));
      return out;
    }
    case StageKind::Longitudinal:
      out.reserve(start.size());
      for (std::size_t i = 0; i < start.size(); ++i) {
        // A vertex that does not move keeps its height bit for bit.
        const double z = start[i].z == end[i].z ? start[i].z : (1.0 - s) * start[i].z + s * end[i].z;
        out.push_back({start[i].x, start[i].y, z});
      }
      return out;
    case StageKind::RotatedLongitudinal:
      out.reserve(start.size());
      for (std::size_t i = 0; i < start.size(); ++i)
        out.push_back((1.0 - s) * start[i] + s * end[i]);
      return out;
    case StageKind::PlanarBarycentric:
      for (const auto& q : planar->at(s)) out.push_back(frame(lift_from_plane(q)));
      return out;
  }
  return out;
}

MorphStage MorphStage::reverse() const {
  MorphStage r = *this;
  r.reversed = !reversed;
  return r;
}

int MorphPlan::total_frames() const {
  int n = 0;
  for (const auto& s : stages) n += s.frames;
  return n;
}

MorphStage rotate_stage(const SphereTriangulation& t, const Rotation& r, int frames) {
  MorphStage s;
  s.kind = StageKind::Rotate;
  s.topology = t.topology_ptr();
  s.frames = frames;
  s.start = t.vertices();
  const auto [axis, angle] = r.axis_angle();
  s.axis = axis;
  s.angle = angle;
  s.end = s.at(1.0);
  return s;
}

MorphStage longitudinal_stage(const SphereTriangulation& t, const std::vector<double>& z_end, int frames) {
  if (z_end.size() != t.vertices().size()) throw std::invalid_argument("longitudinal_stage: size mismatch");
  MorphStage s;
  s.kind = StageKind::Longitudinal;
  s.topology = t.topology_ptr();
  s.frames = frames;
  s.start = t.vertices();
  s.end = s.start;
  for (std::size_t i = 0; i < z_end.size(); ++i) s.end[i].z = z_end[i];
  if (!validate(t).ok()) throw InvalidEndpoint("longitudinal stage: start is not a valid triangulation");
  if (!validate(t.with_vertices(s.end)).ok()) throw InvalidEndpoint("longitudinal stage: end is not a valid triangulation");
  return s;
}

MorphStage rotated_longitudinal_stage(const SphereTriangulation& t, const SpherePoint& pole,
                                      const std::vector<double>& shift, int frames) {
  if (shift.size() != t.vertices().size()) throw std::invalid_argument("rotated_longitudinal_stage: size mismatch");
  MorphStage s;
  s.kind = StageKind::RotatedLongitudinal;
  s.topology = t.topology_ptr();
  s.frames = frames;
  s.pole = pole.normalized();
  s.start = t.vertices();
  s.end = s.start;
  for (std::size_t i = 0; i < shift.size(); ++i) s.end[i] += shift[i] * s.pole;
  if (!validate(t).ok()) throw InvalidEndpoint("rotated longitudinal stage: start is not a valid triangulation");
  if (!validate(t.with_vertices(s.end)).ok())
    throw InvalidEndpoint("rotated longitudinal stage: end is not a valid triangulation");
  return s;
}

MorphStage planar_stage(std::shared_ptr<const PlanarMorph> morph, const Rotation& frame, int frames) {
  MorphStage s;
  s.kind = StageKind::PlanarBarycentric;
  s.topology = morph->start().topology;
  s.frames = frames;
  s.planar = std::move(morph);
  s.frame = frame;
  s.start = s.at(0.0);
  s.end = s.at(1.0);
  return s;
}

std::vector<SphereTriangulation> longitudinal_morph(const SphereTriangulation& t, const std::vector<double>& z_start,
                                                    const std::vector<double>& z_end, int frames) {
  if (frames < 2) throw std::invalid_argument("longitudinal_morph: need at least two frames");
  std::vector<SpherePoint> p = t.vertices();
  if (z_start.size() != p.size()) throw std::invalid_argument("longitudinal_morph: size mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) p[i].z = z_start[i];
  const MorphStage s = longitudinal_stage(t.with_vertices(std::move(p)), z_end, frames);
  std::vector<SphereTriangulation> out;
  out.reserve(frames);
  for (int k = 0; k < frames; ++k) out.push_back(s.triangulation_at(static_cast<double>(k) / (frames - 1)));
  return out;
}

namespace {

// Quality of a southern triangulation as a planar drawing: smallest inner
// face orientation over the squared diameter, with `outer` as outer face.
double planar_margin(const SphereTriangulation& t, int outer) {
  for (const auto& p : t.vertices())
    if (!(p.z < 0.0)) return -1.0;
  return min_relative_orientation(to_planar(t, outer));
}

struct SinkTarget {
  std::vector<double> z;
  double margin = 0.0;
};

// Replaces heights z by a_x x + a_y y + z, choosing (a_x, a_y) by pattern
// search to improve the planar margin. The map (x, y, z) -> (x, y, a.p) is
// linear with positive determinant and keeps longitudes, so composing it
// with a sink stage keeps every frame valid; on the drawing it acts as a
// projective map that can pull in vertices close to the equator.
void recenter(const SphereTriangulation& t, int outer, SinkTarget& target) {
  const auto& p = t.vertices();
  double reach = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    reach = std::max(reach, std::hypot(p[i].x, p[i].y) / -target.z[i]);
  if (!(reach > 0.0)) return;
  auto score = [&](double ax, double ay, std::vector<double>& z) {
    z.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      z[i] = ax * p[i].x + ay * p[i].y + target.z[i];
      if (!(z[i] < 0.0)) return -1.0;
    }
    std::vector<SpherePoint> q = p;
    for (std::size_t i = 0; i < q.size(); ++i) q[i].z = z[i];
    return planar_margin(t.with_vertices(std::move(q)), outer);
  };
  double ax = 0.0, ay = 0.0, best = target.margin;
  double step = 0.25 / reach;
  std::vector<double> z, best_z = target.z;
  for (int evals = 0; evals < 200 && step * reach > 1e-4;) {
    bool moved = false;
    for (auto [dx, dy] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
      const double m = score(ax + dx * step, ay + dy * step, z);
      ++evals;
      if (m > best) {
        best = m;
        best_z = z;
        ax += dx * step;
        ay += dy * step;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  if (best > target.margin && validate(t.with_vertices([&] {
        std::vector<SpherePoint> q = p;
        for (std::size_t i = 0; i < q.size(); ++i) q[i].z = best_z[i];
        return q;
      }())).ok()) {
    target.z = std::move(best_z);
    target.margin = best;
  }
}

// Heights moving a north-posed triangulation to a proper southern point of
// its sink morph, given weak sink heights z. Every s in (s0, 1) is southern
// and valid in exact arithmetic; large sink heights make late s nearly flat
// relative to the coordinates, so s is picked on a grid by face margin.
std::optional<SinkTarget> proper_target(const SphereTriangulation& t, const std::vector<double>& z) {
  const double s0 = 2.0 * proper_sink_parameter(t.vertices(), z) - 1.0;
  const int north = [&] {
    for (int f = 0; f < t.num_faces(); ++f)
      if (face_contains(t, f, kNorthPole)) return f;
    return -1;
  }();
  std::optional<SinkTarget> best;
  constexpr int kGrid = 16;
  for (int k = 1; k < kGrid; ++k) {
    const double s = s0 + (1.0 - s0) * k / kGrid;
    const auto pts = blend_heights(t.vertices(), z, s);
    if (!std::all_of(pts.begin(), pts.end(), [](const SpherePoint& q) { return q.z < 0.0; })) continue;
    const SphereTriangulation low = t.with_vertices(pts);
    const double margin = planar_margin(low, north);
    if (best && margin <= best->margin) continue;
    if (!validate(low).ok()) continue;
    SinkTarget target;
    target.margin = margin;
    for (const auto& q : pts) target.z.push_back(q.z);
    best = std::move(target);
  }
  if (best) recenter(t, north, *best);
  return best;
}

std::optional<SinkTarget> sink_by_system(const SphereTriangulation& t, Tolerance tol) {
  try {
    const SinkResult r = is_sinkable(t, kNorthPole, tol);
    if (r.verdict != SinkVerdict::Sinkable) return std::nullopt;
    return proper_target(t, r.z);
  } catch (const DegenerateDirection&) {
    return std::nullopt;
  }
}

std::optional<SinkTarget> sink_by_shelling(const SphereTriangulation& t, Tolerance tol) {
  try {
    const FaceClassification fc = classify_faces(t, kNorthPole, tol, true);
    if (!is_shellable(t, fc, ShellMethod::AcyclicDual)) return std::nullopt;
    return proper_target(t, ah_embed(t, fc, shelling_order(t, fc)));
  } catch (const DegenerateDirection&) {
    return std::nullopt;
  } catch (const NotShellable&) {
    return std::nullopt;
  }
}

bool all_southern(const std::vector<SpherePoint>& p) {
  return std::all_of(p.begin(), p.end(), [](const SpherePoint& q) { return q.z < 0.0; });
}

int face_at_north(const SphereTriangulation& t) {
  for (int f = 0; f < t.num_faces(); ++f)
    if (face_contains(t, f, kNorthPole)) return f;
  return -1;
}

SphereTriangulation unit_vertices(const SphereTriangulation& t) {
  std::vector<SpherePoint> p;
  p.reserve(t.num_vertices());
  for (const auto& q : t.vertices()) p.push_back(q.normalized());
  return t.with_vertices(std::move(p));
}

struct Pose {
  MorphStage rotate;
  std::optional<std::vector<double>> sink;  // absent when already southern
  int north_face = -1;
  std::string note;
};

// Sink heights are absolute, so t should have unit representatives.
Pose find_pose(const SphereTriangulation& t, const PipelineOptions& o) {
  auto posed = [&](const SpherePoint& pole) {
    Pose p;
    p.rotate = rotate_stage(t, Rotation::pole_to_north(pole), o.frames);
    return p;
  };
  // A triangulation with an everted face lies inside the complementary small
  // triangle; turning away from that triangle makes it southern at once.
  for (int f = 0; f < t.num_faces(); ++f) {
    if (!(t.face_vol(f) < 0.0)) continue;
    const Face& tri = t.face(f);
    const SpherePoint a = t.vertex(tri[0]), b = t.vertex(tri[1]), c = t.vertex(tri[2]);
    // q with q.a = q.b = q.c = 1.
    const SpherePoint q = (1.0 / vol(a, b, c)) * (cross(b, c) + cross(c, a) + cross(a, b));
    Pose p = posed(-q);
    const SphereTriangulation tr = t.with_vertices(p.rotate.last());
    if (all_southern(tr.vertices()) && validate(tr, o.tol).ok() && face_at_north(tr) == f) {
      p.north_face = f;
      p.note = "everted face turned north";
      return p;
    }
  }
  std::vector<SpherePoint> tried;
  DirectionSampler sampler(o.seed);
  for (int k = 0; k < o.random_attempts; ++k) {
    const SpherePoint dir = sampler.next();
    tried.push_back(dir);
    Pose p = posed(dir);
    const SphereTriangulation tr = t.with_vertices(p.rotate.last());
    if (auto z = sink_by_system(tr, o.tol)) {
      p.sink = std::move(z->z);
      p.north_face = face_at_north(tr);
      p.note = "sinkable after " + std::to_string(k + 1) + " random rotation(s)";
      return p;
    }
  }
  if (auto dir = find_shelling_direction(t, o.tol)) {
    tried.push_back(*dir);
    Pose p = posed(*dir);
    const SphereTriangulation tr = t.with_vertices(p.rotate.last());
    if (auto z = sink_by_shelling(tr, o.tol)) {
      p.sink = std::move(z->z);
      p.north_face = face_at_north(tr);
      p.note = "shelling direction from arrangement search";
      return p;
    }
  }
  throw NoSinkableRotationFound("no sinkable rotation found after " + std::to_string(tried.size()) + " directions",
                                std::move(tried));
}

// Sinks a convex polyhedron posed with the pole inside face f. Moving the
// polyhedron down the pole axis until the origin lies just beyond f's plane
// (and inside every other face's half-space) everts f only; the linear map
// (x, y, a.p) with a_z > 0 then pushes every vertex south along its
// longitude. Interpolating heights linearly between the ends composes
// these two motions, so every intermediate frame is valid except at the
// instant f is a hemisphere.
std::optional<SinkTarget> sink_convex(const SphereTriangulation& t, int f) {
  const auto& p = t.vertices();
  auto plane = [&](int g) {
    const Face& tri = t.face(g);
    const SpherePoint n = cross(p[tri[1]] - p[tri[0]], p[tri[2]] - p[tri[0]]);
    return std::make_pair(n, dot(n, p[tri[0]]));
  };
  const auto [nf, df] = plane(f);
  if (!(nf.z > 0.0) || !(df > 0.0)) return std::nullopt;
  const double h_lo = df / nf.z;
  double h_hi = std::numeric_limits<double>::infinity();
  for (int g = 0; g < t.num_faces(); ++g) {
    if (g == f) continue;
    const auto [n, d] = plane(g);
    if (n.z > 0.0) h_hi = std::min(h_hi, d / n.z);
  }
  if (!(h_hi > h_lo)) return std::nullopt;
  if (!std::isfinite(h_hi)) h_hi = 2.0 * h_lo + 1.0;

  const Face& top = t.face(f);
  std::optional<SinkTarget> best;
  constexpr int kGrid = 16;
  for (int k = 1; k < kGrid; ++k) {
    const double h = h_lo + (h_hi - h_lo) * k / kGrid;
    std::vector<SpherePoint> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = {p[i].x, p[i].y, p[i].z - h};
    const SpherePoint a = q[top[0]], b = q[top[1]], c = q[top[2]];
    // w . a = w . b = w . c = 1; w points into the small triangle that
    // holds every vertex.
    const SpherePoint w = (1.0 / vol(a, b, c)) * (cross(b, c) + cross(c, a) + cross(a, b));
    if (!(w.z < 0.0)) continue;
    SinkTarget target;
    bool southern = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double z = dot(w, q[i]) / w.z;
      southern = southern && z < 0.0;
      q[i].z = z;
      target.z.push_back(z);
    }
    if (!southern) continue;
    const SphereTriangulation low = t.with_vertices(q);
    target.margin = planar_margin(low, f);
    if (best && target.margin <= best->margin) continue;
    if (!validate(low).ok()) continue;
    best = std::move(target);
  }
  if (best) recenter(t, f, *best);
  return best;
}

// Rotation of the coherent intermediate putting a point of face f north,
// with the heights of its proper southern sink.
struct CoherentPose {
  MorphStage rotate;
  std::vector<double> sink;
};

CoherentPose pose_coherent(const SphereTriangulation& c, int f, const PipelineOptions& o) {
  const Face& tri = c.face(f);
  std::mt19937_64 rng(o.seed ^ 0x5bd1e995u);
  std::uniform_real_distribution<double> weight(0.2, 1.0);
  std::optional<CoherentPose> best;
  double best_margin = 0.0;
  constexpr int kPoles = 8;
  for (int attempt = 0; attempt < 4 * kPoles; ++attempt) {
    if (best && attempt >= kPoles) break;
    std::array<double, 3> w{1.0, 1.0, 1.0};
    if (attempt > 0) w = {weight(rng), weight(rng), weight(rng)};
    SpherePoint pole{0, 0, 0};
    for (int k = 0; k < 3; ++k) pole += w[k] * c.vertex(tri[k]).normalized();
    CoherentPose cp;
    cp.rotate = rotate_stage(c, Rotation::pole_to_north(pole), o.frames);
    const SphereTriangulation cr = c.with_vertices(cp.rotate.last());
    auto z = sink_convex(cr, f);
    if (!z) z = sink_by_shelling(cr, o.tol);
    if (!z || (best && z->margin <= best_margin)) continue;
    best_margin = z->margin;
    cp.sink = std::move(z->z);
    best = std::move(cp);
  }
  if (!best) throw RealizationFailure("coherent intermediate could not be sunk from its north face");
  return std::move(*best);
}

std::vector<MorphStage> pipeline_half(const SphereTriangulation& input, const SphereTriangulation& c,
                                      const PipelineOptions& o, std::string& note) {
  std::vector<MorphStage> out;
  const SphereTriangulation t = unit_vertices(input);
  Pose pose = find_pose(t, o);
  note = pose.note;
  if (pose.north_face < 0) throw DegenerateDirection("posed triangulation has no face at the north pole");
  out.push_back(pose.rotate);
  SphereTriangulation low = t.with_vertices(pose.rotate.last());
  if (pose.sink) {
    out.push_back(longitudinal_stage(low, *pose.sink, o.frames));
    low = low.with_vertices(out.back().last());
  }
  CoherentPose cp = pose_coherent(c, pose.north_face, o);
  const SphereTriangulation c_up = c.with_vertices(cp.rotate.last());
  const MorphStage c_sink = longitudinal_stage(c_up, cp.sink, o.frames);
  const SphereTriangulation c_low = c_up.with_vertices(c_sink.last());
  auto morph = std::make_shared<const PlanarMorph>(to_planar(low, pose.north_face), to_planar(c_low, pose.north_face));
  out.push_back(planar_stage(std::move(morph), Rotation::identity(), o.frames));
  out.push_back(c_sink.reverse());
  out.push_back(cp.rotate.reverse());
  return out;
}

void append_reversed(std::vector<MorphStage>& dst, const std::vector<MorphStage>& half) {
  for (auto it = half.rbegin(); it != half.rend(); ++it) dst.push_back(it->reverse());
}

void require_isomorphic(const SphereTriangulation& t0, const SphereTriangulation& t1) {
  if (t0.num_vertices() != t1.num_vertices() || t0.faces() != t1.faces())
    throw std::invalid_argument("triangulations are not isomorphic under the identity correspondence");
  if (!validate(t0).ok()) throw InvalidEndpoint("source triangulation is invalid");
  if (!validate(t1).ok()) throw InvalidEndpoint("target triangulation is invalid");
}

}  // namespace

MorphPlan full_pipeline(const SphereTriangulation& t0, const SphereTriangulation& t1, const PipelineOptions& opts) {
  require_isomorphic(t0, t1);
  MorphPlan plan;
  plan.source = t0;
  plan.target = t1;
  plan.original_vertices = t0.num_vertices();
  const SphereTriangulation c = coherent_realization(t0);
  std::string note0, note1;
  plan.stages = pipeline_half(t0, c, opts, note0);
  PipelineOptions o1 = opts;
  o1.seed = opts.seed * 0x9e3779b97f4a7c15ULL + 1;
  append_reversed(plan.stages, pipeline_half(t1, c, o1, note1));
  plan.notes = {note0, note1};
  return plan;
}

// ---------------------------------------------------------------------------
// One-bend morphs

namespace {

// Point of the great circle through a and b with the given x and y.
SpherePoint on_edge_circle(const SpherePoint& a, const SpherePoint& b, double x, double y) {
  const SpherePoint n = cross(a, b);
  if (n.z == 0.0) throw DegenerateDirection("edge lies on a longitude");
  return {x, y, -(n.x * x + n.y * y) / n.z};
}

struct BendHalf {
  std::vector<MorphStage> stages;
  std::optional<SeamRefinement> refinement;
};

BendHalf one_bend_half(const SphereTriangulation& input, const SphereTriangulation& c, const SpherePoint& pole,
                       const PipelineOptions& o) {
  const SphereTriangulation t = unit_vertices(input);
  const Rotation to_frame = Rotation::pole_to_north(pole);
  const Rotation from_frame = to_frame.inverse();
  const SphereTriangulation tf = t.rotated(to_frame);
  const FaceClassification fc = classify_faces(tf, kNorthPole, o.tol);
  const int north = fc.north_face;

  // Seam from whichever north-face vertex gives the best-conditioned sink.
  std::optional<SeamRefinement> ref;
  std::optional<SinkTarget> target;
  std::string last_error = "sink heights too large for the working precision";
  for (int v : tf.face(north)) {
    try {
      SeamRefinement candidate = refine_along_seam(tf, kNorthPole, v, o.tol);
      const int top = candidate.face_map[north].size() == 1 ? candidate.face_map[north][0] : -1;
      if (top < 0) continue;
      auto z = sink_by_shelling(candidate.refined, o.tol);
      if (z && (!target || z->margin > target->margin)) {
        target = std::move(z);
        ref = std::move(candidate);
      }
    } catch (const DegenerateDirection& e) {
      last_error = e.what();
    }
  }
  if (!ref) throw DegenerateDirection("no usable seam refinement from the north face: " + last_error);
  const SphereTriangulation& rf = ref->refined;
  const int n = t.num_vertices();
  const int north_ref = ref->face_map[north][0];
  const std::vector<double>* z_low = &target->z;

  std::vector<SpherePoint> world = t.vertices();
  for (int i = n; i < rf.num_vertices(); ++i) world.push_back(from_frame(rf.vertex(i)));
  std::vector<double> shift(rf.num_vertices());
  for (int i = 0; i < rf.num_vertices(); ++i) shift[i] = (*z_low)[i] - rf.vertex(i).z;
  BendHalf out;
  out.stages.push_back(rotated_longitudinal_stage(rf.with_vertices(world), pole, shift, o.frames));
  std::vector<SpherePoint> low_pts = rf.vertices();
  for (int i = 0; i < rf.num_vertices(); ++i) low_pts[i].z = (*z_low)[i];
  const SphereTriangulation low = rf.with_vertices(low_pts);

  // Coherent intermediate in the same frame, sunk, then refined with bends
  // at edge midpoints.
  CoherentPose cp = pose_coherent(c, north, o);
  const SphereTriangulation c_up = c.with_vertices(cp.rotate.last());
  std::vector<SpherePoint> c_low_pts = c_up.vertices();
  for (int i = 0; i < n; ++i) c_low_pts[i].z = cp.sink[i];
  const SphereTriangulation c_low = c.with_vertices(c_low_pts);
  const SphereTriangulation c_low_ref = refine_like(*ref, c_low, edge_midpoints(*ref, c_low));
  // The unsunk refinement keeps each bend on its longitude and on the edge.
  std::vector<SpherePoint> c_up_bends;
  for (std::size_t k = 0; k < ref->bends.size(); ++k) {
    const Edge e = ref->bends[k].first;
    const SpherePoint& b = c_low_ref.vertex(n + static_cast<int>(k));
    c_up_bends.push_back(on_edge_circle(c_up.vertex(e.a), c_up.vertex(e.b), b.x, b.y));
  }
  const SphereTriangulation c_up_ref = refine_like(*ref, c_up, c_up_bends);

  auto morph = std::make_shared<const PlanarMorph>(to_planar(low, north_ref), to_planar(c_low_ref, north_ref));
  out.stages.push_back(planar_stage(std::move(morph), from_frame, o.frames));

  std::vector<SpherePoint> c_low_world;
  for (const auto& p : c_low_ref.vertices()) c_low_world.push_back(from_frame(p));
  std::vector<double> lift(c_low_ref.num_vertices());
  for (int i = 0; i < c_low_ref.num_vertices(); ++i) lift[i] = c_up_ref.vertex(i).z - c_low_ref.vertex(i).z;
  out.stages.push_back(rotated_longitudinal_stage(c_low_ref.with_vertices(c_low_world), pole, lift, o.frames));

  // Back to the original pose of the intermediate, bends included.
  const Rotation c_rot = Rotation::about_axis(cp.rotate.axis, cp.rotate.angle);
  const Rotation c_rot_inv = c_rot.inverse();
  std::vector<SpherePoint> c_ref_pts = c.vertices();
  for (std::size_t k = 0; k < c_up_bends.size(); ++k) c_ref_pts.push_back(c_rot_inv(c_up_bends[k]));
  out.stages.push_back(rotate_stage(rf.with_vertices(c_ref_pts), from_frame * c_rot, o.frames).reverse());
  out.refinement = std::move(*ref);
  return out;
}

}  // namespace

MorphPlan one_bend_morph(const SphereTriangulation& t0, const SphereTriangulation& t1, const SpherePoint& pole,
                         const PipelineOptions& opts) {
  require_isomorphic(t0, t1);
  MorphPlan plan;
  plan.source = t0;
  plan.target = t1;
  plan.original_vertices = t0.num_vertices();
  const SphereTriangulation c = coherent_realization(t0);
  BendHalf h0 = one_bend_half(t0, c, pole, opts);
  PipelineOptions o1 = opts;
  o1.seed = opts.seed * 0x9e3779b97f4a7c15ULL + 1;
  BendHalf h1 = one_bend_half(t1, c, pole, o1);
  plan.stages = std::move(h0.stages);
  append_reversed(plan.stages, h1.stages);
  plan.refinements.push_back(std::move(*h0.refinement));
  plan.refinements.push_back(std::move(*h1.refinement));
  plan.notes = {"seam refinement", "seam refinement"};
  return plan;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool same_points(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b, int count, double tol) {
  if (static_cast<int>(a.size()) < count || static_cast<int>(b.size()) < count) return false;
  for (int i = 0; i < count; ++i) {
    const SpherePoint d = a[i].normalized() - b[i].normalized();
    if (d.norm() > tol) return false;
  }
  return true;
}

}  // namespace

MorphValidation validate_morph(const MorphPlan& plan, int samples_per_stage, Tolerance tol) {
  MorphValidation out;
  const int samples = std::max(2, samples_per_stage);
  auto fail = [&](int stage, double t, int face, double value, std::string msg) {
    out.violation = MorphViolation{stage, t, face, value, std::move(msg)};
    return out;
  };
  constexpr double kChain = 1e-9;
  const int n = plan.original_vertices;
  if (plan.stages.empty()) return out;
  if (plan.source && !same_points(plan.source->vertices(), plan.stages.front().first(), n, kChain))
    return fail(0, 0.0, -1, 0.0, "first frame differs from the source");
  if (plan.target && !same_points(plan.target->vertices(), plan.stages.back().last(), n, kChain))
    return fail(static_cast<int>(plan.stages.size()) - 1, 1.0, -1, 0.0, "last frame differs from the target");

  for (int si = 0; si < static_cast<int>(plan.stages.size()); ++si) {
    const MorphStage& st = plan.stages[si];
    if (si > 0) {
      const MorphStage& prev = plan.stages[si - 1];
      const int shared = prev.topology == st.topology ? static_cast<int>(st.start.size()) : n;
      if (!same_points(prev.last(), st.first(), shared, kChain))
        return fail(si, 0.0, -1, 0.0, "stage does not start where the previous one ends");
    }
    if (st.kind == StageKind::Longitudinal) {
      for (std::size_t i = 0; i < st.start.size(); ++i)
        if (st.start[i].x != st.end[i].x || st.start[i].y != st.end[i].y)
          return fail(si, 0.0, -1, 0.0, "vertex " + std::to_string(i) + " leaves its longitude");
    }
    if (st.kind == StageKind::RotatedLongitudinal) {
      for (std::size_t i = 0; i < st.start.size(); ++i) {
        const SpherePoint d = st.end[i] - st.start[i];
        const double scale = std::max(st.start[i].norm(), st.end[i].norm());
        if (cross(d, st.pole).norm() > 1e-12 * scale)
          return fail(si, 0.0, -1, 0.0, "vertex " + std::to_string(i) + " moves off its pole-parallel line");
      }
    }
    const bool linear = st.kind == StageKind::Longitudinal || st.kind == StageKind::RotatedLongitudinal;
    std::vector<SpherePoint> p0, p1;
    if (linear) {
      p0 = st.at(0.0);
      p1 = st.at(1.0);
    }
    for (int k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) / (samples - 1);
      const SphereTriangulation tri = st.triangulation_at(t);
      ++out.frames_checked;
      const ValidationReport rep = validate(tri, tol);
      if (!rep.ok()) {
        const Violation& v = rep.violations.front();
        return fail(si, t, v.face, v.value, v.message);
      }
    }
    if (linear) {
      // Every face volume is affine in t.
      const std::vector<SpherePoint> pm = st.at(0.5);
      for (int f = 0; f < st.topology->num_faces(); ++f) {
        const Face& tri = st.topology->face(f);
        const double v0 = vol(p0[tri[0]], p0[tri[1]], p0[tri[2]]);
        const double v1 = vol(p1[tri[0]], p1[tri[1]], p1[tri[2]]);
        const double vm = vol(pm[tri[0]], pm[tri[1]], pm[tri[2]]);
        double scale = 1.0;
        for (int k = 0; k < 3; ++k) scale *= std::max(p0[tri[k]].norm(), p1[tri[k]].norm());
        // Only the height column varies, so vol is affine up to rounding.
        if (st.kind == StageKind::Longitudinal && std::abs(vm - 0.5 * (v0 + v1)) > 1e-12 * scale)
          return fail(si, 0.5, f, vm, "face volume is not affine along the stage");
      }
    }
  }
  return out;
}

int max_subedges(const MorphPlan& plan) {
  if (!plan.source) return 0;
  const int n = plan.original_vertices;
  int worst = 0;
  for (const auto& st : plan.stages) {
    const Topology& topo = *st.topology;
    std::vector<std::vector<int>> adj(topo.num_vertices());
    for (const Edge& e : topo.edges()) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    for (const Edge& e : plan.source->edges()) {
      // Shortest path from a to b through bend vertices only.
      std::vector<int> dist(topo.num_vertices(), -1);
      std::deque<int> queue{e.a};
      dist[e.a] = 0;
      while (!queue.empty() && dist[e.b] < 0) {
        const int u = queue.front();
        queue.pop_front();
        for (int w : adj[u]) {
          if (dist[w] >= 0 || (w < n && w != e.b)) continue;
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
      worst = std::max(worst, dist[e.b] < 0 ? topo.num_vertices() : dist[e.b]);
    }
  }
  return worst;
}

}  // namespace sphmorph
