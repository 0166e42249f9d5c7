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

#include <array>
#include <bitset>
#include <cstdint>
#include <string>

#include "semrad/body.hpp"
#include "semrad/tri_plane.hpp"

namespace semrad {

// Fixed semantic part layout. Order matters: it defines semantic-mask
// channel indices and the pack file layout.
inline constexpr int kPartCount = 6;
inline constexpr const char* kPartNames[kPartCount] = {
    "body", "tops", "outer", "bottoms", "shoes", "accessories"};

inline constexpr int kLabelBits = 21;

// Bit k enables part k.
using PartMask = uint8_t;
inline constexpr PartMask kAllParts = PartMask((1u << kPartCount) - 1u);

struct Part {
  std::string name;
  TriPlane plane;
  bool enabled = true;
  float density_scale = 1.0f;
};

// The complete canonical-space renderable: body prior, one tri-plane field
// per semantic part, and the articulation data. Immutable after baking;
// rendering workers share it read-only.
struct SemanticScene {
  BodyPrior body;
  std::array<Part, kPartCount> parts;
  Skeleton skeleton;
  std::bitset<kLabelBits> label_bits;  // scene metadata only
  float t_near = 0.5f;
  float t_far = 4.0f;
  Aabb bbox{{-1, -1, -1}, {1, 1, 1}};

  PartMask enabled_mask() const {
    PartMask m = 0;
    for (int k = 0; k < kPartCount; ++k)
      if (parts[k].enabled) m |= PartMask(1u << k);
    return m;
  }

  void validate() const {
    if (t_near >= t_far) throw std::runtime_error("scene requires t_near < t_far");
    if (skeleton.bones.empty()) throw std::runtime_error("scene requires at least one bone");
    for (int k = 0; k < kPartCount; ++k) {
      if (parts[k].name != kPartNames[k])
        throw std::runtime_error("part " + std::to_string(k) + " must be named " + kPartNames[k]);
      if (!bbox.contains(parts[k].plane.bbox))
        throw std::runtime_error("part bbox escapes the scene bbox: " + parts[k].name);
    }
  }
};

struct EmptySceneError : std::runtime_error {
  EmptySceneError() : std::runtime_error("all semantic parts are disabled") {}
};

}  // namespace semrad
