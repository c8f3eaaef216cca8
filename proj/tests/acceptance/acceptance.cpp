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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Reference values come from the oracles in
// oracle.hpp, which work on raw coordinates and face lists only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sphmorph/generators.hpp"
#include "sphmorph/morph.hpp"
#include "sphmorph/shelling.hpp"
#include "sphmorph/sinking.hpp"
#include "support.hpp"

namespace {

using namespace sphmorph;
using testing_support::point;
using testing_support::tris;
using testing_support::vec;
using testing_support::vecs;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

oracle::Sink oracle_verdict(SinkVerdict v) {
  switch (v) {
    case SinkVerdict::Sinkable: return oracle::Sink::Sinkable;
    case SinkVerdict::Unsinkable: return oracle::Sink::Unsinkable;
    case SinkVerdict::Singular: return oracle::Sink::Singular;
  }
  return oracle::Sink::Degenerate;
}

const char* name(oracle::Sink s) {
  switch (s) {
    case oracle::Sink::Sinkable: return "sinkable";
    case oracle::Sink::Unsinkable: return "unsinkable";
    case oracle::Sink::Singular: return "singular";
    case oracle::Sink::Degenerate: return "degenerate";
  }
  return "?";
}

std::optional<bool> oracle_shellable(const SphereTriangulation& t, const SpherePoint& p) {
  return oracle::shellable(vecs(t), tris(t), vec(p));
}

// A random pole at which the library classification is defined.
SpherePoint generic_pole(const SphereTriangulation& t, std::mt19937_64& rng) {
  for (;;) {
    const SpherePoint p = point(oracle::random_unit(rng));
    try {
      classify_faces(t, p);
      return p;
    } catch (const DegenerateDirection&) {
    }
  }
}

// 1 -------------------------------------------------------------------------

Outcome schonhardt_boundary() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::pair<double, oracle::Sink> cases[] = {
      {0.1, oracle::Sink::Sinkable},         {kPi / 6 - 0.05, oracle::Sink::Sinkable},
      {kPi / 6 + 0.05, oracle::Sink::Unsinkable}, {0.6, oracle::Sink::Unsinkable},
      {kPi / 6, oracle::Sink::Singular}};
  std::vector<oracle::Sink> got;
  for (const auto& [theta, expect] : cases) got.push_back(oracle_verdict(is_sinkable(schonhardt(theta), kNorthPole).verdict));
  const double elapsed = seconds_since(t0);
  for (std::size_t i = 0; i < got.size(); ++i) {
    const auto& [theta, expect] = cases[i];
    const auto t = schonhardt(theta);
    const auto ref = oracle::sink(vecs(t), tris(t), {0, 0, 1});
    o.detail << "theta=" << theta << ":" << name(got[i]) << " ";
    o.require(got[i] == expect, "theta " + std::to_string(theta) + " gave " + name(got[i]));
    o.require(ref.verdict == expect, "oracle disagrees at theta " + std::to_string(theta));
  }
  o.detail << "time=" << elapsed << "s";
  o.require(elapsed < 1.0, "over 1 s");
  return o;
}

// 2 -------------------------------------------------------------------------

Outcome schonhardt_shellability() {
  Outcome o;
  TwistParams x90;
  x90.theta = 0.4;
  x90.pose = Pose::RotatedX90;
  const struct {
    const char* label;
    SphereTriangulation t;
    bool expect;
  } cases[] = {{"-0.3 standard", schonhardt(-0.3), true},
               {"+0.4 standard", schonhardt(0.4), false},
               {"+0.4 rotated 90deg about x", schonhardt(x90), true}};
  for (const auto& c : cases) {
    const bool got = is_shellable(c.t, kNorthPole);
    const auto ref = oracle_shellable(c.t, kNorthPole);
    o.detail << c.label << ":" << (got ? "shellable" : "not shellable") << " ";
    o.require(got == c.expect, c.label);
    o.require(ref && *ref == c.expect, std::string("oracle on ") + c.label);
  }
  return o;
}

// 3 -------------------------------------------------------------------------

Outcome jessen_pose() {
  Outcome o;
  const auto t = shaddock(kJessenAngle);
  const bool shell = is_shellable(t, kNorthPole);
  const auto sink = is_sinkable(t, kNorthPole);
  o.detail << "shellable=" << shell << " sink=" << to_string(sink.verdict);
  o.require(!shell, "shellable at standard pose");
  o.require(sink.verdict == SinkVerdict::Sinkable, "not sinkable");
  const auto ref_shell = oracle_shellable(t, kNorthPole);
  o.require(ref_shell && !*ref_shell, "oracle shellability");
  o.require(oracle::sink(vecs(t), tris(t), {0, 0, 1}).verdict == oracle::Sink::Sinkable, "oracle sinkability");
  return o;
}

// 4 -------------------------------------------------------------------------

// Random (triangulation, pole) pairs drawn evenly from the four generators.
std::vector<std::pair<SphereTriangulation, SpherePoint>> random_pairs(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<SphereTriangulation, SpherePoint>> out;
  while (static_cast<int>(out.size()) < count) {
    const int kind = static_cast<int>(out.size()) % 4;
    const std::uint64_t s = rng();
    std::optional<SphereTriangulation> t;
    try {
      switch (kind) {
        case 0: t = random_coherent(8 + static_cast<int>(u(rng) * 60), s); break;
        case 1: t = ugly_flip_family(8 + static_cast<int>(u(rng) * 60), s); break;
        case 2: t = schonhardt(-1.2 + 2.4 * u(rng)); break;
        default: t = shaddock(-1.0 + 2.0 * u(rng)); break;
      }
    } catch (const std::invalid_argument&) {
      continue;  // a twist that collapses a face
    }
    out.emplace_back(*t, generic_pole(*t, rng));
  }
  return out;
}

Outcome four_way_equivalence() {
  Outcome o;
  int disagreements = 0, oracle_mismatch = 0, shellable = 0;
  for (const auto& [t, p] : random_pairs(200, 4)) {
    const auto fc = classify_faces(t, p);
    std::set<bool> answers;
    for (auto m : kAllShellMethods) answers.insert(is_shellable(t, fc, m));
    disagreements += answers.size() != 1;
    const auto ref = oracle_shellable(t, p);
    oracle_mismatch += ref && *ref != *answers.begin();
    shellable += *answers.begin();
  }
  o.detail << "pairs=200 disagreements=" << disagreements << " oracle_mismatches=" << oracle_mismatch
           << " shellable=" << shellable;
  o.require(disagreements == 0, "methods disagree");
  o.require(oracle_mismatch == 0, "oracle mismatch");
  return o;
}

// 5 -------------------------------------------------------------------------

Outcome coherent_shellable() {
  Outcome o;
  std::mt19937_64 rng(5);
  int tested = 0, shellable = 0, oracle_shell = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = 50 + (150 * i) / 19;
    const auto t = random_coherent(n, 500 + i);
    for (int k = 0; k < 100; ++k) {
      const SpherePoint p = generic_pole(t, rng);
      ++tested;
      shellable += is_shellable(t, p);
      const auto ref = oracle_shellable(t, p);
      oracle_shell += ref && *ref;
    }
  }
  o.detail << "directions=" << tested << " shellable=" << shellable << " oracle_shellable=" << oracle_shell;
  o.require(shellable == tested, "a coherent triangulation was not shellable");
  o.require(oracle_shell == tested, "oracle found an unshellable direction");
  return o;
}

// 6 -------------------------------------------------------------------------

Outcome ah_vs_system() {
  Outcome o;
  std::mt19937_64 rng(6);
  int instances = 0;
  double worst_rel = 0, worst_down = 0, worst_lp = 0;
  for (std::uint64_t s = 1; instances < 100; ++s) {
    const auto t = (s % 2) ? random_coherent(20 + static_cast<int>(s % 80), s) : ugly_flip_family(20 + static_cast<int>(s % 80), s);
    const SpherePoint p = generic_pole(t, rng);
    const auto ref = oracle_shellable(t, p);
    if (!ref || !*ref) continue;
    ++instances;
    const auto fc = classify_faces(t, p);
    const auto z_ah = ah_embed(t, fc, shelling_order(t, fc));
    const auto sol = solve_sink_system(build_sink_system(t, p));
    if (!std::holds_alternative<std::vector<double>>(sol)) {
      o.require(false, "system singular on a shellable instance");
      continue;
    }
    const auto& z = std::get<std::vector<double>>(sol);
    double scale = 0, diff = 0;
    for (std::size_t i = 0; i < z.size(); ++i) scale = std::max(scale, std::abs(z_ah[i])), diff = std::max(diff, std::abs(z[i] - z_ah[i]));
    worst_rel = std::max(worst_rel, diff / scale);

    // LP constraints and flat down-faces, evaluated from scratch.
    std::vector<oracle::Vec> q;
    double m = 0;
    for (int i = 0; i < t.num_vertices(); ++i) {
      auto a = oracle::to_pole_frame(vec(p), vec(t.vertex(i)));
      a[2] = z[i];
      m = std::max({m, std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
      q.push_back(a);
    }
    const double tau = 1e-8 * m * m * m;
    const auto ref_sink = oracle::sink(vecs(t), tris(t), vec(p));
    o.require(ref_sink.verdict == oracle::Sink::Sinkable, "oracle says not sinkable");
    int down = 0;
    for (int f = 0; f < t.num_faces(); ++f) {
      const Face& F = t.face(f);
      const double v = oracle::det(q[F[0]], q[F[1]], q[F[2]]);
      if (fc.labels[f] == FaceLabel::Down) {
        ++down;
        worst_down = std::max(worst_down, std::abs(v) / tau);
      } else if (fc.labels[f] == FaceLabel::Up) {
        worst_lp = std::max(worst_lp, -v / tau);
      }
    }
    o.require(down == t.num_vertices() - 3, "down-face count");
    for (int i : t.face(fc.north_face)) o.require(std::abs(z[i] + 1.0) <= tau, "north face height");
    for (double h : z) o.require(h < 0, "nonnegative height");
  }
  o.detail << "instances=" << instances << " max_rel_diff=" << worst_rel << " max|down vol'|/tau=" << worst_down
           << " max(-up vol')/tau=" << worst_lp;
  o.require(worst_rel <= 1e-8, "ah_embed and system differ");
  o.require(worst_down <= 1.0, "down-face not flat");
  o.require(worst_lp <= 1.0, "up-face inverted");
  return o;
}

// 7 -------------------------------------------------------------------------

Outcome reversal_symmetry() {
  Outcome o;
  int mismatches = 0, shellable = 0;
  for (const auto& [t, p] : random_pairs(200, 7)) {
    const bool fwd = is_shellable(t, p);
    const bool back = is_shellable(t, -p);
    mismatches += fwd != back;
    shellable += fwd;
  }
  o.detail << "pairs=200 mismatches=" << mismatches << " shellable=" << shellable;
  o.require(mismatches == 0, "reversal changed the verdict");
  return o;
}

// Frames of every stage, checked by the area oracle.
int oracle_bad_frames(const MorphPlan& plan, int samples) {
  int bad = 0;
  for (const auto& st : plan.stages)
    for (int k = 0; k <= samples; ++k) {
      const auto pts = st.at(static_cast<double>(k) / samples);
      std::vector<oracle::Tri> f(st.topology->faces().begin(), st.topology->faces().end());
      bad += !oracle::embedded(vecs(pts), f);
    }
  return bad;
}

double endpoint_error(const MorphPlan& plan, const SphereTriangulation& t0, const SphereTriangulation& t1) {
  double e = 0;
  const auto a = plan.stages.front().first(), b = plan.stages.back().last();
  for (int i = 0; i < t0.num_vertices(); ++i) {
    e = std::max(e, (a[i].normalized() - t0.vertex(i).normalized()).norm());
    e = std::max(e, (b[i].normalized() - t1.vertex(i).normalized()).norm());
  }
  return e;
}

// 8 -------------------------------------------------------------------------

Outcome jessen_to_icosahedron() {
  Outcome o;
  const auto t0 = shaddock(kJessenAngle), t1 = shaddock(regular_icosahedron_angle());
  const auto start = std::chrono::steady_clock::now();
  MorphPlan plan;
  try {
    plan = full_pipeline(t0, t1);
  } catch (const std::exception& e) {
    o.require(false, std::string("pipeline threw: ") + e.what());
    return o;
  }
  const auto res = validate_morph(plan, 50);
  const double elapsed = seconds_since(start);
  const int bad = oracle_bad_frames(plan, 50);
  const double err = endpoint_error(plan, t0, t1);
  o.detail << "stages=" << plan.stages.size() << " frames_checked=" << res.frames_checked
           << " oracle_bad_frames=" << bad << " endpoint_err=" << err << " time=" << elapsed << "s";
  o.require(res.ok(), res.ok() ? "" : "validate_morph: " + res.violation->message);
  o.require(bad == 0, "oracle found an invalid frame");
  o.require(err <= 1e-8, "endpoints");
  o.require(elapsed < 10.0, "over 10 s");
  return o;
}

// 9 -------------------------------------------------------------------------

// Longest chain of sub-edges standing for an original edge: 1 if the edge is
// present, 2 if a single bend vertex joins its ends, otherwise 0 (missing).
int subedges(const Topology& top, int n, int i, int j) {
  if (top.has_edge(i, j)) return 1;
  for (int b = n; b < top.num_vertices(); ++b)
    if (top.has_edge(i, b) && top.has_edge(b, j)) return 2;
  return 0;
}

Outcome one_bend() {
  Outcome o;
  const auto t0 = schonhardt(0.4), t1 = schonhardt(-0.3);
  MorphPlan plan;
  try {
    plan = one_bend_morph(t0, t1, kNorthPole);
  } catch (const std::exception& e) {
    o.require(false, std::string("one_bend_morph threw: ") + e.what());
    return o;
  }
  const auto res = validate_morph(plan, 50);
  const int n = t0.num_vertices();
  int worst = 0, missing = 0;
  for (const auto& st : plan.stages)
    for (const Edge& e : t0.edges()) {
      const int k = subedges(*st.topology, n, e.a, e.b);
      missing += k == 0;
      worst = std::max(worst, k);
    }
  const int bad = oracle_bad_frames(plan, 50);
  o.detail << "stages=" << plan.stages.size() << " max_subedges=" << worst << " (library " << max_subedges(plan)
           << ") oracle_bad_frames=" << bad << " endpoint_err=" << endpoint_error(plan, t0, t1);
  o.require(res.ok(), res.ok() ? "" : "validate_morph: " + res.violation->message);
  o.require(missing == 0, "an original edge is not represented");
  o.require(worst <= 2 && max_subedges(plan) <= 2, "more than two sub-edges");
  o.require(bad == 0, "oracle found an invalid frame");
  o.require(endpoint_error(plan, t0, t1) <= 1e-8, "endpoints");
  return o;
}

// 10 ------------------------------------------------------------------------

std::vector<std::pair<std::string, SphereTriangulation>> small_instances() {
  std::vector<std::pair<std::string, SphereTriangulation>> out;
  for (double th : {-0.3, 0.1, 0.4, kPi / 6 + 0.05, 0.6, 1.0}) {
    TwistParams p;
    p.theta = th;
    out.emplace_back("schonhardt " + std::to_string(th), schonhardt(p));
    p.pose = Pose::RotatedX90;
    out.emplace_back("schonhardt x90 " + std::to_string(th), schonhardt(p));
  }
  for (double th : {-0.3, 0.0, 0.3, kJessenAngle, 0.7, 1.0})
    out.emplace_back("shaddock " + std::to_string(th), shaddock(th));
  for (int n : {6, 9, 12})
    for (std::uint64_t s = 1; s <= 3; ++s) {
      out.emplace_back("coherent " + std::to_string(n), random_coherent(n, s));
      out.emplace_back("flip " + std::to_string(n), ugly_flip_family(n, s));
    }
  return out;
}

Outcome shelling_search() {
  Outcome o;
  int instances = 0, found = 0, sampled_found = 0;
  for (const auto& [label, t] : small_instances()) {
    ++instances;
    const auto d = find_shelling_direction(t);
    if (d) {
      ++found;
      bool ok = false;
      try {
        ok = is_shellable(t, *d);
      } catch (const DegenerateDirection&) {
      }
      o.require(ok, label + ": returned direction is not shellable");
    }
    std::mt19937_64 rng(std::hash<std::string>{}(label));
    bool any = false;
    for (int k = 0; k < 100000 && !any; ++k) {
      const auto r = oracle::shellable(vecs(t), tris(t), oracle::random_unit(rng));
      any = r && *r;
    }
    sampled_found += any;
    o.require(!any || d.has_value(), label + ": sampling found a direction, search did not");
  }
  o.detail << "instances=" << instances << " search_found=" << found << " sampling_found=" << sampled_found;
  return o;
}

// 11 ------------------------------------------------------------------------

struct Attempts {
  int first_shellable = 0;  // 1-based; 0 if none within the budget
  int first_sinkable = 0;
};

Attempts random_attempts(const SphereTriangulation& t, std::uint64_t seed, int budget) {
  Attempts a;
  DirectionSampler dirs(seed);
  for (int k = 1; k <= budget && (!a.first_shellable || !a.first_sinkable); ++k) {
    const SpherePoint p = dirs.next();
    try {
      if (!a.first_shellable && is_shellable(t, p)) a.first_shellable = k;
      if (!a.first_sinkable && is_sinkable(t, p).verdict == SinkVerdict::Sinkable) a.first_sinkable = k;
    } catch (const DegenerateDirection&) {
    }
  }
  return a;
}

Outcome desk_survey() {
  Outcome o;
  int shell4 = 0, sink3 = 0, none64 = 0;
  for (int i = 0; i < 50; ++i) {
    const auto t = ugly_flip_family(100, 1100 + i);
    const auto a = random_attempts(t, 9100 + i, 64);
    shell4 += a.first_shellable >= 1 && a.first_shellable <= 4;
    sink3 += a.first_sinkable >= 1 && a.first_sinkable <= 3;
    if (!a.first_shellable) {
      ++none64;
      o.require(!find_shelling_direction(t).has_value(),
                "n=100 instance " + std::to_string(i) + ": search finds a direction, 64 attempts do not");
    }
  }
  // The same comparison at a size where the exhaustive search is cheap.
  int reduced_none = 0;
  for (int i = 0; i < 50; ++i) {
    const auto t = ugly_flip_family(12, 2100 + i);
    const auto a = random_attempts(t, 9200 + i, 64);
    if (a.first_shellable) continue;
    ++reduced_none;
    o.require(!find_shelling_direction(t).has_value(),
              "n=12 instance " + std::to_string(i) + ": search finds a direction, 64 attempts do not");
  }
  o.detail << "n=100: shellable within 4 attempts " << shell4 << "/50 (" << 2 * shell4 << "%, target >=90%), "
           << "sinkable within 3 " << sink3 << "/50 (" << 2 * sink3 << "%, target >=95%), none in 64: " << none64
           << "; n=12: none in 64: " << reduced_none;
  return o;
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  const struct {
    int id;
    const char* title;
    std::function<Outcome()> run;
  } criteria[] = {
      {1, "Schonhardt sinkability boundary", schonhardt_boundary},
      {2, "Schonhardt shellability", schonhardt_shellability},
      {3, "Jessen pose", jessen_pose},
      {4, "four-way shellability equivalence", four_way_equivalence},
      {5, "coherent implies shellable", coherent_shellable},
      {6, "back-substitution vs linear system", ah_vs_system},
      {7, "reversal symmetry", reversal_symmetry},
      {8, "Jessen to icosahedron pipeline", jessen_to_icosahedron},
      {9, "one-bend morph", one_bend},
      {10, "shelling-direction search oracle", shelling_search},
      {11, "desk-scale direction survey", desk_survey},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.require(false, std::string("exception: ") + e.what());
    }
    failed += !r.pass;
    std::printf("[%s] criterion %d: %s -- %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", c.id, c.title, r.detail.str().c_str(),
                seconds_since(t0));
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
