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

#include "semrad/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace semrad {

RenderBuffers render_dense_oracle(const SemanticScene& scene, const Pose& pose,
                                  const Camera& camera, int n_coarse, int n_fine,
                                  const std::array<TriPlane, kPartCount>* hi_planes,
                                  const RenderParams& base, RenderStats* stats) {
  RenderParams params = base;
  params.n_coarse = n_coarse;
  params.n_fine = n_fine;
  return render_dense(scene, pose, camera, params, hi_planes, stats);
}

Psnr psnr(const ImageF& a, const ImageF& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("psnr: image shapes differ");
  double sq = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    const double d = double(a.data[i]) - double(b.data[i]);
    sq += d * d;
  }
  Psnr r;
  if (sq == 0.0) {
    r.infinite = true;
    return r;
  }
  const double mse = sq / double(a.data.size());
  r.db = 10.0 * std::log10(1.0 / mse);
  return r;
}

double mean_abs_error(const ImageF& a, const ImageF& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("mae: image shapes differ");
  double s = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) s += std::abs(double(a.data[i]) - double(b.data[i]));
  return a.data.empty() ? 0.0 : s / double(a.data.size());
}

ImageF box_downsample(const ImageF& in, int factor) {
  if (factor <= 0 || in.width % factor != 0 || in.height % factor != 0)
    throw std::invalid_argument("box_downsample: factor must divide the resolution");
  ImageF out(in.width / factor, in.height / factor, in.channels);
  const double inv = 1.0 / double(factor * factor);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      for (int c = 0; c < in.channels; ++c) {
        double s = 0.0;
        for (int dy = 0; dy < factor; ++dy)
          for (int dx = 0; dx < factor; ++dx) s += in.at(x * factor + dx, y * factor + dy, c);
        out.at(x, y, c) = float(s * inv);
      }
    }
  }
  return out;
}

double upsample_consistency(const ImageF& hi, const ImageF& lo) {
  if (hi.channels != lo.channels || hi.width != lo.width * 4 || hi.height != lo.height * 4)
    throw std::invalid_argument("upsample_consistency: resolutions must be 4x-related");
  return mean_abs_error(box_downsample(hi, 4), lo);
}

GarmentCheck garment_extraction_check(const SemanticScene& scene, int part, const Pose& pose,
                                      const Camera& camera, const RenderParams& params) {
  if (part < 0 || part >= kPartCount) throw std::invalid_argument("part index out of range");
  if (!scene.parts[part].enabled) throw std::invalid_argument("garment check requires the part to be enabled");

  const PartMask all = scene.enabled_mask() & params.parts;
  RenderParams p = params;

  p.parts = all;
  const RenderBuffers full = render_dense(scene, pose, camera, p);
  p.parts = PartMask(1u << part);
  const RenderBuffers only = render_dense(scene, pose, camera, p);

  RenderBuffers without;
  const PartMask complement = PartMask(all & ~(1u << part));
  if (complement != 0) {
    p.parts = complement;
    without = render_dense(scene, pose, camera, p);
  } else {
    // zeroing the only part leaves pure background
    without.color = ImageF(camera.width, camera.height, 3);
    for (size_t i = 0; i < without.color.pixel_count(); ++i) {
      without.color.data[3 * i + 0] = params.background.x;
      without.color.data[3 * i + 1] = params.background.y;
      without.color.data[3 * i + 2] = params.background.z;
    }
    without.semantic = ImageF(camera.width, camera.height, kPartCount);
    without.depth = ImageF(camera.width, camera.height, 1, scene.t_far);
    without.normal = ImageF(camera.width, camera.height, 3);
    without.opacity = ImageF(camera.width, camera.height, 1);
  }

  GarmentCheck r;
  double hidden_sum = 0.0, visible_sum = 0.0;
  for (int y = 0; y < camera.height; ++y) {
    for (int x = 0; x < camera.width; ++x) {
      const float op = full.opacity.at(x, y);
      const float share = full.semantic.at(x, y, part) / std::max(op, 1e-6f);
      const float* cf = full.color.pixel(x, y);
      if (share < 1e-3f) {
        const float* cw = without.color.pixel(x, y);
        for (int c = 0; c < 3; ++c) hidden_sum += std::abs(double(cw[c]) - double(cf[c]));
        ++r.hidden_pixels;
      }
      if (share > 0.99f && op > 0.99f) {
        const float* co = only.color.pixel(x, y);
        for (int c = 0; c < 3; ++c) visible_sum += std::abs(double(co[c]) - double(cf[c]));
        ++r.visible_pixels;
      }
    }
  }
  r.hidden_mae = r.hidden_pixels ? hidden_sum / double(3 * r.hidden_pixels) : 0.0;
  r.visible_mae = r.visible_pixels ? visible_sum / double(3 * r.visible_pixels) : 0.0;
  r.hidden_ok = r.hidden_mae <= kGarmentCheckTolerance;
  r.visible_ok = r.visible_mae <= kGarmentCheckTolerance;
  return r;
}

}  // namespace semrad
