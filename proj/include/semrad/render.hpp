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

#include "semrad/camera.hpp"
#include "semrad/image.hpp"
#include "semrad/integrate.hpp"
#include "semrad/sampling.hpp"

namespace semrad {

struct RenderParams {
  int n_coarse = 36;
  int n_fine = 36;
  bool jitter = true;
  uint64_t seed = 0;
  DensityConfig density;
  Vec3 background{1.0f, 1.0f, 1.0f};
  int workers = -1;              // -1: SEMRAD_WORKERS env or hardware
  PartMask parts = kAllParts;    // ANDed with the scene's enabled flags
  float normal_eps = 1e-3f;
  bool render_normals = true;
};

// Rays with accumulated opacity below this are background: they get the
// background color, depth t_far, zero semantics and zero opacity.
inline constexpr float kOpacityCutoff = 0.01f;

// Per-pixel outputs of one render pass. color is composited over the
// background; depth is the opacity-normalized expected depth clamped to
// [t_near, t_far] (the raw Eq.-style integral divides out the opacity so
// the value stays a physical ray depth); semantic rows sum to the stored
// opacity.
struct RenderBuffers {
  ImageF color;     // 3ch
  ImageF semantic;  // kPartCount ch
  ImageF depth;     // 1ch
  ImageF normal;    // 3ch, unit length on foreground
  ImageF opacity;   // 1ch

  int width() const { return color.width; }
  int height() const { return color.height; }
};

struct RenderStats {
  uint64_t shading_evals = 0;
  uint64_t normal_evals = 0;
  uint64_t importance_fallback_rays = 0;
  double wall_seconds = 0.0;
};

// Full dense pipeline: pinhole rays, stratified + importance sampling in
// posed space, inverse-LBS deformation, per-point compositing and
// transmittance quadrature. hi_planes (optional) swaps every part's
// tri-plane for its high-resolution counterpart. sample_depth_dump
// (optional, test/guidance plumbing) receives every pixel's merged sample
// depths as an (n_coarse + n_fine)-channel image.
RenderBuffers render_dense(const SemanticScene& scene, const Pose& pose, const Camera& camera,
                           const RenderParams& params,
                           const std::array<TriPlane, kPartCount>* hi_planes = nullptr,
                           RenderStats* stats = nullptr, ImageF* sample_depth_dump = nullptr);

}  // namespace semrad
