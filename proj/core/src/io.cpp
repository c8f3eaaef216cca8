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


#include "sphmorph/io.hpp"

#include <iostream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace sphmorph {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line and column.
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    // Drop the library's own "[json.exception...] parse error at ...:" prefix.
    if (const auto pos = msg.find(": ", msg.find("parse error")); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg, line,
                     column);
  }
}

void check_version(const json& doc, const char* what) {
  if (!doc.is_object()) throw ParseError(std::string(what) + ": top level must be an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"].get<int>() != 1)
    throw ParseError(std::string(what) + ": expected \"version\": 1");
}

SpherePoint point_at(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
    throw ParseError(where + ": expected [x, y, z]");
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

std::vector<Face> faces_at(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of faces");
  std::vector<Face> faces;
  for (std::size_t f = 0; f < arr.size(); ++f) {
    const json& t = arr[f];
    const std::string at = where + "[" + std::to_string(f) + "]";
    if (!t.is_array() || t.size() != 3) throw ParseError(at + ": expected [i, j, k]");
    Face face{};
    for (int k = 0; k < 3; ++k) {
      if (!t[k].is_number_integer()) throw ParseError(at + ": indices must be integers");
      face[k] = t[k].get<int>();
    }
    faces.push_back(face);
  }
  return faces;
}

json point_json(const SpherePoint& p) { return json::array({p.x, p.y, p.z}); }

json faces_json(const std::vector<Face>& faces) {
  json out = json::array();
  for (const Face& f : faces) out.push_back(json::array({f[0], f[1], f[2]}));
  return out;
}

}  // namespace

SphereTriangulation parse_triangulation(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc, "triangulation");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError("triangulation: missing \"vertices\" array");
  if (!doc.contains("faces")) throw ParseError("triangulation: missing \"faces\" array");
  std::vector<SpherePoint> verts;
  const json& vs = doc["vertices"];
  for (std::size_t i = 0; i < vs.size(); ++i) verts.push_back(point_at(vs[i], "vertices[" + std::to_string(i) + "]"));
  std::vector<Face> faces = faces_at(doc["faces"], "faces");
  const int n = static_cast<int>(verts.size());
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int v : faces[f])
      if (v < 0 || v >= n)
        throw ParseError("faces[" + std::to_string(f) + "]: vertex index " + std::to_string(v) + " out of range");
  SphereTriangulation t(std::move(verts), std::move(faces));
  if (!t.topology().problems().empty())
    throw InvalidTriangulation("triangulation: " + t.topology().problems().front().message);
  return t;
}

SphereTriangulation read_triangulation(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_triangulation(text);
}

std::string triangulation_to_json(const SphereTriangulation& t) {
  json doc;
  doc["version"] = 1;
  json vs = json::array();
  for (const auto& p : t.vertices()) vs.push_back(point_json(p));
  doc["vertices"] = std::move(vs);
  doc["faces"] = faces_json(t.faces());
  return doc.dump() + "\n";
}

std::string morph_to_json(const MorphPlan& plan) {
  json doc;
  doc["version"] = 1;
  json stages = json::array();
  for (const auto& st : plan.stages) {
    json s;
    s["kind"] = to_string(st.kind);
    s["faces"] = faces_json(st.topology->faces());
    json frames = json::array();
    const int count = std::max(2, st.frames);
    for (int k = 0; k < count; ++k) {
      json frame = json::array();
      for (const auto& p : st.at(static_cast<double>(k) / (count - 1))) frame.push_back(point_json(p));
      frames.push_back(std::move(frame));
    }
    s["frames"] = std::move(frames);
    stages.push_back(std::move(s));
  }
  doc["stages"] = std::move(stages);
  return doc.dump() + "\n";
}

std::vector<StoredStage> parse_morph(const std::string& text) {
  const json doc = parse_document(text);
  check_version(doc, "morph");
  if (!doc.contains("stages") || !doc["stages"].is_array()) throw ParseError("morph: missing \"stages\" array");
  std::vector<StoredStage> out;
  for (std::size_t s = 0; s < doc["stages"].size(); ++s) {
    const json& js = doc["stages"][s];
    const std::string at = "stages[" + std::to_string(s) + "]";
    if (!js.is_object() || !js.contains("kind") || !js["kind"].is_string() || !js.contains("frames"))
      throw ParseError(at + ": expected an object with \"kind\" and \"frames\"");
    StoredStage st;
    st.kind = js["kind"].get<std::string>();
    if (js.contains("faces")) st.faces = faces_at(js["faces"], at + ".faces");
    for (std::size_t k = 0; k < js["frames"].size(); ++k) {
      const json& fr = js["frames"][k];
      std::vector<SpherePoint> pts;
      for (std::size_t i = 0; i < fr.size(); ++i)
        pts.push_back(point_at(fr[i], at + ".frames[" + std::to_string(k) + "][" + std::to_string(i) + "]"));
      st.frames.push_back(std::move(pts));
    }
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace sphmorph
