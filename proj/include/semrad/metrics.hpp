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

#include "semrad/render.hpp"

namespace semrad {

// Brute-force reference renderer: the dense pipeline at oracle sample
// counts, optionally on the high-resolution planes. Shares all shading and
// integration code with the production paths, so divergence from it is
// attributable to sampling and gating alone.
RenderBuffers render_dense_oracle(const SemanticScene& scene, const Pose& pose,
                                  const Camera& camera, int n_coarse = 72, int n_fine = 72,
                                  const std::array<TriPlane, kPartCount>* hi_planes = nullptr,
                                  const RenderParams& base = {}, RenderStats* stats = nullptr);

struct Psnr {
  double db = 0.0;
  bool infinite = false;  // identical inputs
};

// 10*log10(1/MSE) over all channels, images in [0, 1]. Throws on shape
// mismatch.
Psnr psnr(const ImageF& a, const ImageF& b);

double mean_abs_error(const ImageF& a, const ImageF& b);

// Box average by an integer factor; both dimensions must divide evenly.
ImageF box_downsample(const ImageF& in, int factor);

// L1 of Downsample(hi) - lo with a 4x4 box filter; the render-consistency
// metric between the two pipeline stages.
double upsample_consistency(const ImageF& hi, const ImageF& lo);

// Pixelwise disentanglement check for part j (three renders: only-j,
// without-j, full). hidden: where the full render barely sees j, removing
// j must not change the image; visible: where j alone is seen and
// unoccluded, the solo render must match the full one.
struct GarmentCheck {
  double hidden_mae = 0.0;
  double visible_mae = 0.0;
  size_t hidden_pixels = 0;
  size_t visible_pixels = 0;
  bool hidden_ok = false;
  bool visible_ok = false;

  bool pass() const { return hidden_ok && visible_ok; }
};

inline constexpr double kGarmentCheckTolerance = 2e-3;

GarmentCheck garment_extraction_check(const SemanticScene& scene, int part, const Pose& pose,
                                      const Camera& camera, const RenderParams& params);

}  // namespace semrad
