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


#include "sphmorph/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>

namespace sphmorph {

std::vector<SpherePoint> geodesic_samples(const SpherePoint& a, const SpherePoint& b, int samples) {
  samples = std::max(2, samples);
  const SpherePoint ua = a.normalized();
  const SpherePoint ub = b.normalized();
  const double omega = std::acos(std::clamp(dot(ua, ub), -1.0, 1.0));
  std::vector<SpherePoint> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double s = static_cast<double>(k) / (samples - 1);
    if (omega < 1e-12) {
      out.push_back(ua);
      continue;
    }
    const double sw = std::sin(omega);
    out.push_back((std::sin((1 - s) * omega) / sw) * ua + (std::sin(s * omega) / sw) * ub);
  }
  return out;
}

namespace {

std::optional<PlanarPoint> project(const SpherePoint& p, Projection proj) {
  const SpherePoint u = p.normalized();
  if (proj == Projection::Gnomonic) {
    if (!(u.z < -1e-9)) return std::nullopt;
    return gnomonic_project(u);
  }
  if (!(u.z < 1.0 - 1e-9)) return std::nullopt;
  return stereographic_project(u);
}

struct Frame {
  double min_u, max_v, scale, margin;
  double x(double u) const { return margin + (u - min_u) * scale; }
  double y(double v) const { return margin + (max_v - v) * scale; }  // SVG y grows downward
};

}  // namespace

SvgDocument render_svg(const SphereTriangulation& t, const SvgOptions& o) {
  SvgDocument doc;
  std::vector<std::optional<PlanarPoint>> verts(t.num_vertices());
  for (int i = 0; i < t.num_vertices(); ++i) {
    verts[i] = project(t.vertex(i), o.projection);
    if (!verts[i]) doc.errors.push_back({false, i, {}, "vertex " + std::to_string(i) + " outside projection domain"});
  }
  std::vector<std::vector<PlanarPoint>> paths;
  for (const Edge& e : t.edges()) {
    std::vector<PlanarPoint> path;
    bool ok = true;
    for (const auto& s : geodesic_samples(t.vertex(e.a), t.vertex(e.b), o.edge_samples)) {
      auto q = project(s, o.projection);
      if (!q) {
        ok = false;
        break;
      }
      path.push_back(*q);
    }
    if (!ok) {
      doc.errors.push_back({true, -1, e,
                            "edge " + std::to_string(e.a) + "-" + std::to_string(e.b) + " leaves projection domain"});
      continue;
    }
    paths.push_back(std::move(path));
  }

  double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u, lo_v = lo_u, hi_v = -lo_u;
  auto grow = [&](const PlanarPoint& q) {
    lo_u = std::min(lo_u, q.u), hi_u = std::max(hi_u, q.u);
    lo_v = std::min(lo_v, q.v), hi_v = std::max(hi_v, q.v);
  };
  for (const auto& v : verts)
    if (v) grow(*v);
  for (const auto& p : paths)
    for (const auto& q : p) grow(q);
  if (!std::isfinite(lo_u)) lo_u = hi_u = lo_v = hi_v = 0.0;
  const double extent = std::max({hi_u - lo_u, hi_v - lo_v, 1e-12});
  const Frame fr{lo_u, hi_v, (o.size - 2 * o.margin) / extent, o.margin};

  std::ostringstream svg;
  svg.precision(6);
  svg << std::fixed;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.size << "\" height=\"" << o.size
      << "\" viewBox=\"0 0 " << o.size << ' ' << o.size << "\">\n";
  svg << "<g fill=\"none\" stroke=\"#333\" stroke-width=\"1\">\n";
  for (const auto& p : paths) {
    svg << "<polyline points=\"";
    for (std::size_t k = 0; k < p.size(); ++k) svg << (k ? " " : "") << fr.x(p[k].u) << ',' << fr.y(p[k].v);
    svg << "\"/>\n";
    ++doc.edges_drawn;
  }
  svg << "</g>\n";
  if (o.vertex_dots) {
    svg << "<g fill=\"#c22\">\n";
    for (const auto& v : verts) {
      if (!v) continue;
      svg << "<circle cx=\"" << fr.x(v->u) << "\" cy=\"" << fr.y(v->v) << "\" r=\"" << o.vertex_radius << "\"/>\n";
      ++doc.vertices_drawn;
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  doc.svg = svg.str();
  return doc;
}

std::vector<SvgDocument> render_morph_svg(const MorphPlan& plan, const SvgOptions& opts) {
  std::vector<SvgDocument> out;
  out.reserve(plan.total_frames());
  for (const auto& st : plan.stages) {
    for (int k = 0; k < st.frames; ++k) {
      const double t = st.frames > 1 ? static_cast<double>(k) / (st.frames - 1) : 1.0;
      out.push_back(render_svg(st.triangulation_at(t), opts));
    }
  }
  return out;
}

}  // namespace sphmorph
