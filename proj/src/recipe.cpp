// ======================================================================== //
// Copyright 2026 the semrad authors                                        //
//                                                                          //
// Licensed under the Apache License, Version 2.0 (the "License");          //
// you may not use this file except in compliance with the License.         //
// You may obtain a copy of the License at                                  //
//                                                                          //
//     http://www.apache.org/licenses/LICENSE-2.0                           //
//                                                                          //
// Unless required by applicable law or agreed to in writing, software      //
// distributed under the License is distributed on an "AS IS" BASIS,        //
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. //
// See the License for the specific language governing permissions and      //
// limitations under the License.                                           //
// ======================================================================== //

#include "semrad/recipe.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semrad/rng.hpp"

namespace semrad {

using nlohmann::json;

namespace {

Vec3 parse_vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw std::runtime_error(std::string(what) + " must be a 3-element array");
  return {j[0].get<float>(), j[1].get<float>(), j[2].get<float>()};
}

GarmentSpec parse_garment(const json& j, int part_index) {
  GarmentSpec g;
  g.enabled = j.value("enabled", true);
  if (j.contains("color")) g.color = parse_vec3(j["color"], "color");
  g.density_scale = j.value("density_scale", 1.0f);
  g.speckle = j.value("speckle", 0.0f);
  if (j.contains("region")) {
    g.has_shell = true;
    const json& r = j["region"];
    g.region.cx = r.at("center")[0].get<float>();
    g.region.cy = r.at("center")[1].get<float>();
    g.region.hx = r.at("half")[0].get<float>();
    g.region.hy = r.at("half")[1].get<float>();
    g.region.corner = r.value("corner", 0.0f);
    g.thickness = j.value("thickness", 0.02f);
    if (g.thickness <= 0.0f) throw std::runtime_error("garment thickness must be positive");
    if (g.region.corner > std::min(g.region.hx, g.region.hy))
      throw std::runtime_error("region corner radius exceeds half extent");
  } else if (part_index != 0) {
    throw std::runtime_error(std::string("garment '") + kPartNames[part_index] + "' needs a region");
  }
  if (j.contains("stripes")) {
    StripePattern s;
    s.period = j["stripes"].at("period").get<float>();
    if (s.period <= 0.0f) throw std::runtime_error("stripe period must be positive");
    s.color2 = parse_vec3(j["stripes"].at("color2"), "stripes.color2");
    g.stripes = s;
  }
  return g;
}

}  // namespace

Recipe parse_recipe(const std::string& json_text) {
  json j = json::parse(json_text);
  Recipe r;
  r.name = j.value("name", "scene");
  r.t_near = j.at("near").get<float>();
  r.t_far = j.at("far").get<float>();
  if (!(r.t_near < r.t_far) || r.t_near <= 0.0f)
    throw std::runtime_error("recipe requires 0 < near < far");
  r.smoothing = j.value("smoothing", 0.0f);

  if (j.contains("label_bits")) {
    const json& bits = j["label_bits"];
    if (!bits.is_array() || bits.size() != kLabelBits)
      throw std::runtime_error("label_bits must hold exactly 21 entries");
    for (int i = 0; i < kLabelBits; ++i) r.label_bits[i] = bits[i].get<int>() != 0;
  }

  for (const json& b : j.at("bones")) {
    BoneSpec s;
    s.name = b.at("name").get<std::string>();
    if (b.contains("parent") && !b["parent"].is_null()) s.parent = b["parent"].get<std::string>();
    s.a = parse_vec3(b.at("a"), "bone endpoint a");
    s.b = parse_vec3(b.at("b"), "bone endpoint b");
    s.radius = b.at("radius").get<float>();
    if (s.radius <= 0.0f) throw std::runtime_error("bone radius must be positive: " + s.name);
    r.bones.push_back(std::move(s));
  }
  if (r.bones.empty()) throw std::runtime_error("recipe needs at least one bone");

  const json& garments = j.at("garments");
  for (int k = 0; k < kPartCount; ++k) {
    if (!garments.contains(kPartNames[k]))
      throw std::runtime_error(std::string("recipe must name all six parts; missing '") + kPartNames[k] + "'");
    r.garments[k] = parse_garment(garments[kPartNames[k]], k);
  }
  return r;
}

Recipe load_recipe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open recipe: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_recipe(ss.str());
}

namespace {

// Per-texel color jitter keyed on the texel's world position, so bakes at
// different resolutions agree bit-exactly at shared texel positions.
float position_hash01(uint64_t seed, int part, float x, float y) {
  uint32_t xb, yb;
  static_assert(sizeof(float) == sizeof(uint32_t));
  std::memcpy(&xb, &x, 4);
  std::memcpy(&yb, &y, 4);
  uint64_t h = splitmix64(seed ^ (uint64_t(part) << 32));
  h = splitmix64(h ^ xb);
  h = splitmix64(h ^ yb);
  return float(h >> 40) * (1.0f / 16777216.0f);
}

Aabb capsule_bounds(const Capsule& c) {
  const Vec3 r{c.radius, c.radius, c.radius};
  return {min(c.a, c.b) - r, max(c.a, c.b) + r};
}

}  // namespace

SemanticScene bake_scene(const Recipe& recipe, int resolution, uint64_t seed) {
  if (resolution <= 0 || (resolution & (resolution - 1)) != 0)
    throw std::runtime_error("bake resolution must be a power of two");

  SemanticScene scene;
  scene.t_near = recipe.t_near;
  scene.t_far = recipe.t_far;
  scene.label_bits = recipe.label_bits;
  scene.body.smoothing = recipe.smoothing;

  for (const BoneSpec& s : recipe.bones) {
    Bone b;
    b.name = s.name;
    b.capsule = {s.a, s.b, s.radius};
    if (!s.parent.empty()) {
      b.parent = scene.skeleton.find(s.parent);
      if (b.parent < 0) throw std::runtime_error("bone parent not defined before child: " + s.parent);
    }
    scene.skeleton.bones.push_back(b);
    scene.body.bones.push_back(b.capsule);
  }

  // Reject shells that would dilate the body outside the scene bbox.
  Aabb body_bounds = capsule_bounds(scene.body.bones[0]);
  for (const Capsule& c : scene.body.bones) {
    const Aabb cb = capsule_bounds(c);
    body_bounds.lo = min(body_bounds.lo, cb.lo);
    body_bounds.hi = max(body_bounds.hi, cb.hi);
  }
  if (!scene.bbox.contains(body_bounds)) throw std::runtime_error("body exits the scene bbox");
  for (int k = 0; k < kPartCount; ++k) {
    const GarmentSpec& g = recipe.garments[k];
    if (!g.has_shell) continue;
    const Vec3 t{g.thickness, g.thickness, g.thickness};
    const Aabb shell{body_bounds.lo - t, body_bounds.hi + t};
    if (!scene.bbox.contains(shell))
      throw std::runtime_error(std::string("garment shell exits the scene bbox: ") + kPartNames[k]);
  }

  for (int k = 0; k < kPartCount; ++k) {
    const GarmentSpec& g = recipe.garments[k];
    Part& part = scene.parts[k];
    part.name = kPartNames[k];
    part.enabled = g.enabled;
    part.density_scale = g.density_scale;
    part.plane = TriPlane(resolution, 4, scene.bbox);

    // Full signal into the XY plane; XZ and YZ stay zero.
    for (int j = 0; j < resolution; ++j) {
      const float y = part.plane.texel_coord(1, j);
      for (int i = 0; i < resolution; ++i) {
        const float x = part.plane.texel_coord(0, i);
        float* t = part.plane.texel(TriPlane::kXY, i, j);
        t[0] = g.delta_d(x, y);
        Vec3 c = g.base_color(x, y);
        if (g.speckle > 0.0f) {
          const float n = (position_hash01(seed, k, x, y) - 0.5f) * 2.0f * g.speckle;
          c = clamp01(c + Vec3{n, n, n});
        }
        t[1] = c.x;
        t[2] = c.y;
        t[3] = c.z;
      }
    }
  }

  scene.validate();
  return scene;
}

}  // namespace semrad
