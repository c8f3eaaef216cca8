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


// Command-line front end. Exit codes: 0 success, 1 when a search finds
// nothing (or the answer is unsinkable), 2 on unusable input.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sphmorph/generators.hpp"
#include "sphmorph/io.hpp"
#include "sphmorph/morph.hpp"
#include "sphmorph/shelling.hpp"
#include "sphmorph/sinking.hpp"
#include "sphmorph/survey.hpp"
#include "sphmorph/svg.hpp"

namespace {

using json = nlohmann::json;
using namespace sphmorph;

constexpr int kOk = 0;
constexpr int kNotFound = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 1;
  double tol = 1e-9;
  std::vector<double> pole;
  std::string out = "-";
  int frames = 60;

  Tolerance tolerance() const { return Tolerance(tol); }
  SpherePoint pole_or_north() const {
    if (pole.empty()) return kNorthPole;
    const SpherePoint p{pole[0], pole[1], pole[2]};
    if (p.norm() == 0.0) throw InputError("--pole must be nonzero");
    return p;
  }
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SphereTriangulation load(const std::string& path) {
  const std::string text = slurp(path);
  try {
    return parse_triangulation(text);
  } catch (const ParseError& e) {
    throw InputError((path == "-" ? "<stdin>" : path) + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

json point_json(const SpherePoint& p) { return json::array({p.x, p.y, p.z}); }

json sink_json(const SinkResult& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["residual"] = r.residual;
  j["pivot_ratio"] = r.pivot_ratio;
  if (!r.z.empty()) j["z"] = r.z;
  j["min_face_vol"] = r.diagnostics.min_face_vol;
  j["max_down_abs"] = r.diagnostics.max_down_abs;
  j["near_boundary"] = r.diagnostics.near_boundary;
  return j;
}

// Re-evaluates sinkability at a pole moved by a tiny random rotation.
json retry_rotate(const SphereTriangulation& t, const SpherePoint& pole, const Common& c) {
  DirectionSampler axes(c.seed);
  const SpherePoint moved = Rotation::about_axis(axes.next(), 1e-6)(pole);
  json j = sink_json(is_sinkable(t, moved, c.tolerance()));
  j["pole"] = point_json(moved);
  return j;
}

// gen ------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  double theta = 0.4;
  std::string pose = "standard";
  int n = 20;
  int m = 8;
  double eps = 0.05;
};

int run_gen(const GenArgs& g, const Common& c) {
  SphereTriangulation t = [&]() -> SphereTriangulation {
    const Pose pose = g.pose == "x90" ? Pose::RotatedX90 : Pose::Standard;
    if (g.pose != "standard" && g.pose != "x90") throw InputError("--pose must be standard or x90");
    if (g.family == "schonhardt") {
      TwistParams p;
      p.theta = g.theta;
      p.pose = pose;
      return schonhardt(p, c.tolerance());
    }
    if (g.family == "shaddock") return shaddock(g.theta, pose, {}, c.tolerance());
    if (g.family == "jessen") return shaddock(kJessenAngle, pose, {}, c.tolerance());
    if (g.family == "icosahedron") return shaddock(regular_icosahedron_angle(), pose, {}, c.tolerance());
    if (g.family == "coherent") return random_coherent(g.n, c.seed);
    if (g.family == "flip") return ugly_flip_family(g.n, c.seed);
    if (g.family == "rotor") return equatorial_rotor(g.m, g.eps);
    throw InputError("unknown family '" + g.family + "'");
  }();
  emit(c.out, triangulation_to_json(t));
  return kOk;
}

// classify -------------------------------------------------------------------

int run_classify(const std::string& in, const Common& c, bool retry) {
  const SphereTriangulation t = load(in);
  const SpherePoint pole = c.pole_or_north();
  json j;
  try {
    j["shellable"] = is_shellable(t, pole, ShellMethod::AcyclicDual, c.tolerance());
    const SinkResult r = is_sinkable(t, pole, c.tolerance());
    j["sinkable"] = r.verdict == SinkVerdict::Sinkable;
    j["sink_verdict"] = to_string(r.verdict);
    if (retry && r.verdict == SinkVerdict::Singular) j["retry"] = retry_rotate(t, pole, c);
  } catch (const DegenerateDirection& e) {
    throw InputError(std::string("pole is not generic: ") + e.what());
  }
  emit(c.out, j.dump());
  return kOk;
}

// shell-dir ------------------------------------------------------------------

int run_shell_dir(const std::string& in, const Common& c) {
  const SphereTriangulation t = load(in);
  ShellSearchStats stats;
  const auto dir = find_shelling_direction(t, c.tolerance(), &stats);
  json j;
  j["found"] = dir.has_value();
  j["direction"] = dir ? point_json(*dir) : json(nullptr);
  j["circles"] = stats.circles;
  j["candidates"] = stats.candidates;
  j["tested"] = stats.tested;
  j["degenerate"] = stats.degenerate;
  emit(c.out, j.dump());
  return dir ? kOk : kNotFound;
}

// sink -----------------------------------------------------------------------

int run_sink(const std::string& in, const Common& c, bool retry) {
  const SphereTriangulation t = load(in);
  const SpherePoint pole = c.pole_or_north();
  SinkSystem sys = [&] {
    try {
      return build_sink_system(t, pole, c.tolerance());
    } catch (const DegenerateDirection& e) {
      throw InputError(std::string("pole is not generic: ") + e.what());
    }
  }();
  const SinkResult r = is_sinkable(t, pole, c.tolerance());
  json j = sink_json(r);
  j["version"] = 1;
  j["pole"] = point_json(pole);
  if (retry && r.verdict == SinkVerdict::Singular) j["retry"] = retry_rotate(t, pole, c);
  if (r.verdict == SinkVerdict::Sinkable) {
    // Stop short of z' itself, where the down-faces are flat.
    const double s = proper_sink_parameter(sys.points, r.z);
    const auto pts = blend_heights(sys.points, r.z, s);
    std::vector<double> z_end;
    for (const auto& p : pts) z_end.push_back(p.z);
    j["s"] = s;
    try {
      MorphPlan plan;
      plan.stages.push_back(rotate_stage(t, sys.frame, c.frames));
      const SphereTriangulation posed = t.with_vertices(sys.points);
      plan.stages.push_back(longitudinal_stage(posed, z_end, c.frames));
      j["morph"] = json::parse(morph_to_json(plan));
    } catch (const InvalidEndpoint& e) {
      j["morph"] = nullptr;
      j["morph_error"] = e.what();
    }
  }
  emit(c.out, j.dump());
  return r.verdict == SinkVerdict::Sinkable ? kOk : kNotFound;
}

// morph ----------------------------------------------------------------------

int run_morph(const std::string& a, const std::string& b, const Common& c, bool one_bend, int validate_samples) {
  const SphereTriangulation t0 = load(a);
  const SphereTriangulation t1 = load(b);
  PipelineOptions o;
  o.seed = c.seed;
  o.frames = c.frames;
  o.tol = c.tolerance();
  MorphPlan plan;
  try {
    plan = one_bend ? one_bend_morph(t0, t1, c.pole_or_north(), o) : full_pipeline(t0, t1, o);
  } catch (const NoSinkableRotationFound& e) {
    std::cerr << "sphmorph: " << e.what() << '\n';
    return kNotFound;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (validate_samples > 0) {
    const MorphValidation v = validate_morph(plan, validate_samples, c.tolerance());
    if (!v.ok()) {
      std::cerr << "sphmorph: morph failed validation at stage " << v.violation->stage << ", t = " << v.violation->t
                << ": " << v.violation->message << '\n';
      return kNotFound;
    }
  }
  emit(c.out, morph_to_json(plan));
  return kOk;
}

// survey ---------------------------------------------------------------------

struct SurveyArgs {
  std::string input = "-";
  std::string family;
  int directions = 500;
  int instances = 20;
  int n = 100;
  bool records = false;
};

int run_survey(const SurveyArgs& s, const Common& c) {
  if (!s.family.empty()) {
    FamilyOptions o;
    o.family = s.family;
    o.instances = s.instances;
    o.directions = s.directions;
    o.n = s.n;
    o.seed = c.seed;
    o.tol = c.tolerance();
    try {
      emit(c.out, family_experiment(o));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    return kOk;
  }
  const SphereTriangulation t = load(s.input);
  const SurveyReport rep = direction_survey(t, s.directions, c.seed, c.tolerance());
  json j;
  j["version"] = 1;
  j["seed"] = rep.seed;
  j["directions"] = rep.directions;
  j["degenerate"] = rep.degenerate;
  j["shellable_frac"] = rep.shellable_frac;
  j["sinkable_frac"] = rep.sinkable_frac;
  j["unsinkable_frac"] = rep.unsinkable_frac;
  j["singular_frac"] = rep.singular_frac;
  j["first_shellable"] = rep.first_shellable();
  j["first_sinkable"] = rep.first_sinkable();
  j["seconds"] = rep.seconds;
  if (s.records) {
    json rec = json::array();
    for (const auto& r : rep.records)
      rec.push_back({{"direction", point_json(r.direction)}, {"shellable", r.shellable}, {"sink", to_string(r.sink)}});
    j["records"] = std::move(rec);
  }
  emit(c.out, j.dump());
  return kOk;
}

// export-svg -----------------------------------------------------------------

int run_export_svg(const std::string& in, const Common& c, const std::string& projection, double size) {
  SvgOptions o;
  if (projection == "gnomonic")
    o.projection = Projection::Gnomonic;
  else if (projection != "stereographic")
    throw InputError("--projection must be stereographic or gnomonic");
  o.size = size;

  const std::string text = slurp(in);
  bool is_morph = false;
  try {
    const json doc = json::parse(text);
    is_morph = doc.is_object() && doc.contains("stages");
  } catch (const json::parse_error&) {
    // reported with a position by the loaders below
  }

  auto report = [](const SvgDocument& d, const std::string& where) {
    for (const auto& e : d.errors) std::cerr << "sphmorph: " << where << ": " << e.message << '\n';
  };

  if (!is_morph) {
    SvgDocument d;
    try {
      d = render_svg(parse_triangulation(text), o);
    } catch (const ParseError& e) {
      throw InputError(in + ": " + e.what());
    }
    report(d, in);
    emit(c.out, d.svg);
    return kOk;
  }

  std::vector<StoredStage> stages;
  try {
    stages = parse_morph(text);
  } catch (const ParseError& e) {
    throw InputError(in + ": " + e.what());
  }
  if (c.out == "-") throw InputError("morph export writes one file per frame; give --out PREFIX");
  int k = 0;
  for (const auto& st : stages) {
    for (const auto& frame : st.frames) {
      const SvgDocument d = render_svg(SphereTriangulation(frame, st.faces), o);
      char name[32];
      std::snprintf(name, sizeof name, "_%05d.svg", k++);
      report(d, c.out + name);
      emit(c.out + name, d.svg);
    }
  }
  std::cerr << "sphmorph: wrote " << k << " frames\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analyze and morph geodesic triangulations of the sphere."};
  app.require_subcommand(1);
  Common c;
  bool retry = false;

  auto add_common = [&](CLI::App* sub, bool pole, bool frames) {
    sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
    sub->add_option("--tol", c.tol, "relative zero tolerance for determinant signs")->capture_default_str();
    sub->add_option("--out", c.out, "output file ('-' for stdout)")->capture_default_str();
    if (pole) sub->add_option("--pole", c.pole, "pole direction x,y,z (default north)")->delimiter(',')->expected(3);
    if (frames) sub->add_option("--frames", c.frames, "frames per stage")->capture_default_str()->check(CLI::PositiveNumber);
  };

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "generate a triangulation");
  gen->add_option("family", g.family, "schonhardt | shaddock | jessen | icosahedron | coherent | flip | rotor")
      ->required();
  gen->add_option("--theta", g.theta, "twist angle (schonhardt, shaddock)")->capture_default_str();
  gen->add_option("--pose", g.pose, "standard | x90")->capture_default_str();
  gen->add_option("--n", g.n, "vertex count (coherent, flip)")->capture_default_str();
  gen->add_option("--m", g.m, "rotor size")->capture_default_str();
  gen->add_option("--eps", g.eps, "rotor offset")->capture_default_str();
  add_common(gen, false, false);

  std::string in = "-", in2;
  auto* classify = app.add_subcommand("classify", "shellability and sinkability at a pole");
  classify->add_option("input", in, "triangulation JSON ('-' for stdin)")->capture_default_str();
  classify->add_flag("--retry-rotate", retry, "on a singular system, retry at a slightly rotated pole");
  add_common(classify, true, false);

  auto* shell_dir = app.add_subcommand("shell-dir", "search for a longitudinally shellable direction");
  shell_dir->add_option("input", in, "triangulation JSON")->capture_default_str();
  add_common(shell_dir, false, false);

  auto* sink = app.add_subcommand("sink", "sinking heights and sink-morph keyframes");
  sink->add_option("input", in, "triangulation JSON")->capture_default_str();
  sink->add_flag("--retry-rotate", retry, "on a singular system, retry at a slightly rotated pole");
  add_common(sink, true, true);

  bool one_bend = false;
  int validate_samples = 0;
  auto* morph = app.add_subcommand("morph", "morph between two isomorphic triangulations");
  morph->add_option("source", in, "source triangulation JSON")->required();
  morph->add_option("target", in2, "target triangulation JSON")->required();
  morph->add_flag("--one-bend", one_bend, "seam-refined morph from --pole instead of a rotation search");
  morph->add_option("--validate", validate_samples, "check the plan with this many samples per stage");
  add_common(morph, true, true);

  SurveyArgs s;
  auto* survey = app.add_subcommand("survey", "random-direction survey");
  survey->add_option("input", s.input, "triangulation JSON (ignored with --family)")->capture_default_str();
  survey->add_option("--family", s.family, "run the generated-family experiment (flip)");
  survey->add_option("--directions", s.directions, "directions per triangulation")->capture_default_str();
  survey->add_option("--instances", s.instances, "family instances")->capture_default_str();
  survey->add_option("--n", s.n, "family vertex count")->capture_default_str();
  survey->add_flag("--records", s.records, "include per-direction records");
  add_common(survey, false, false);

  std::string projection = "stereographic";
  double size = 800.0;
  auto* svg = app.add_subcommand("export-svg", "render a triangulation or morph frames as SVG");
  svg->add_option("input", in, "triangulation or morph JSON")->capture_default_str();
  svg->add_option("--projection", projection, "stereographic | gnomonic")->capture_default_str();
  svg->add_option("--size", size, "image size in px")->capture_default_str();
  add_common(svg, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*gen) return run_gen(g, c);
    if (*classify) return run_classify(in, c, retry);
    if (*shell_dir) return run_shell_dir(in, c);
    if (*sink) return run_sink(in, c, retry);
    if (*morph) return run_morph(in, in2, c, one_bend, validate_samples);
    if (*survey) return run_survey(s, c);
    if (*svg) return run_export_svg(in, c, projection, size);
  } catch (const InputError& e) {
    std::cerr << "sphmorph: " << e.what() << '\n';
    return kInputError;
  } catch (const InvalidTriangulation& e) {
    std::cerr << "sphmorph: invalid triangulation: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "sphmorph: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "sphmorph: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
