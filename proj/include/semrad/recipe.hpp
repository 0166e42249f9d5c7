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

#pragma once

#include <optional>
#include <string>

#include "semrad/scene.hpp"

namespace semrad {

// Rounded rectangle in the canonical XY plane; the signed distance is
// negative inside.
struct RegionXY {
  float cx = 0.0f, cy = 0.0f;
  float hx = 0.1f, hy = 0.1f;  // half extents
  float corner = 0.0f;

  float sdf(float x, float y) const {
    const float qx = std::abs(x - cx) - (hx - corner);
    const float qy = std::abs(y - cy) - (hy - corner);
    const float ox = std::max(qx, 0.0f), oy = std::max(qy, 0.0f);
    return std::sqrt(ox * ox + oy * oy) + std::min(std::max(qx, qy), 0.0f) - corner;
  }
};

struct StripePattern {
  float period = 0.1f;  // along canonical y
  Vec3 color2;
};

// One analytic part field. The body entry has no shell (its SDF offset is
// identically zero); garments are offset shells over the body prior: the
// offset is max(region_sdf, 0) - thickness, so the part surface is the
// body dilated by `thickness` inside the region, fading out beyond it.
struct GarmentSpec {
  bool enabled = true;
  bool has_shell = false;
  RegionXY region;
  float thickness = 0.02f;
  Vec3 color{0.5f, 0.5f, 0.5f};
  std::optional<StripePattern> stripes;
  float speckle = 0.0f;  // per-texel color jitter amplitude, seed-driven
  float density_scale = 1.0f;

  float delta_d(float x, float y) const {
    if (!has_shell) return 0.0f;
    return std::max(region.sdf(x, y), 0.0f) - thickness;
  }

  Vec3 base_color(float /*x*/, float y) const {
    if (stripes) {
      const float s = (y - region.cy) / stripes->period;
      const long band = long(std::floor(s));
      if (band & 1) return stripes->color2;
    }
    return color;
  }
};

struct BoneSpec {
  std::string name;
  std::string parent;  // empty = root
  Vec3 a, b;
  float radius = 0.05f;
};

// Procedural scene description; the JSON schema mirrors these fields.
struct Recipe {
  std::string name = "scene";
  float t_near = 0.9f;
  float t_far = 3.6f;
  float smoothing = 0.0f;
  std::bitset<kLabelBits> label_bits;
  std::vector<BoneSpec> bones;
  std::array<GarmentSpec, kPartCount> garments;
};

Recipe parse_recipe(const std::string& json_text);
Recipe load_recipe(const std::string& path);

// Projects each part's analytic field into its tri-plane: the XY plane
// holds the full signal sampled at texel positions, XZ and YZ hold zeros,
// so sample_tri_plane reproduces the analytic value at texel positions
// exactly. Deterministic given (recipe, resolution, seed).
SemanticScene bake_scene(const Recipe& recipe, int resolution, uint64_t seed = 0);

}  // namespace semrad
