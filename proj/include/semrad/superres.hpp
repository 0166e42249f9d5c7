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

#include "semrad/guidance.hpp"
#include "semrad/render.hpp"
#include "semrad/upsample.hpp"

namespace semrad {

struct GuidedParams {
  DensityConfig density;
  Vec3 background{1.0f, 1.0f, 1.0f};
  int workers = -1;
  PartMask parts = kAllParts;
  float normal_eps = 1e-3f;
  bool render_normals = true;
  // Quadrature interval floor for consecutive candidates; negative means
  // tau/4. Zero disables the floor, which makes the guided path reproduce
  // a dense render bit-exactly when fed its depths and all-open gates.
  float gap_floor = -1.0f;
};

struct GuidedStats {
  uint64_t shading_evals = 0;
  uint64_t normal_evals = 0;
  uint64_t foreground_pixels = 0;
  uint64_t open_gate_sum = 0;      // over foreground pixels
  uint64_t dense_equivalent = 0;   // 72 * K * pixel count
  double wall_seconds = 0.0;

  double open_gates_mean() const {
    return foreground_pixels ? double(open_gate_sum) / double(foreground_pixels) : 0.0;
  }
  double reduction_ratio() const {
    return dense_equivalent ? double(shading_evals) / double(dense_equivalent) : 0.0;
  }
};

// High-resolution render restricted to the guidance: per foreground pixel
// the field is evaluated only at the sorted candidate depths (exact
// duplicates collapsed) and only for gated parts, whose semantic weights
// renormalize over the open set. Background pixels are skipped without any
// field evaluation.
RenderBuffers render_highres_guided(const SemanticScene& scene, const HighResTriPlanes* hi,
                                    const Pose& pose, const Camera& camera,
                                    const DepthGuidance& guidance, const SemanticGate& gate,
                                    const GuidedParams& params, GuidedStats* stats = nullptr);

inline float default_tau(const SemanticScene& scene) {
  return (scene.t_far - scene.t_near) / 72.0f;  // one coarse sampling step
}

// Full stage-2 orchestration from a low-res render: aggregate + sort +
// upsample depth candidates, upsample the semantic gate, and run the
// guided render at factor x resolution. tau < 0 picks the default;
// depth_aggregation = false is the center-pixel-only ablation.
struct GuidedStage {
  Camera camera;  // high-res camera
  DepthGuidance guidance;
  SemanticGate gate;
  RenderBuffers buffers;
  GuidedStats stats;
};

GuidedStage run_guided_stage(const SemanticScene& scene, const HighResTriPlanes* hi,
                             const Pose& pose, const Camera& camera_lo,
                             const RenderBuffers& lowres, float tau, float delta,
                             const GuidedParams& params, int factor = 4,
                             bool depth_aggregation = true);

}  // namespace semrad
