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

#include "semrad/guidance.hpp"

#include <algorithm>
#include <stdexcept>

#include "semrad/render.hpp"
#include "semrad/upsample.hpp"

namespace semrad {

ImageF aggregate_depths(const ImageF& depth, float tau, bool with_neighbors) {
  if (depth.channels != 1) throw std::invalid_argument("depth image must have one channel");
  if (!(tau > 0.0f)) throw std::invalid_argument("tau must be positive");
  const int W = depth.width, H = depth.height;
  ImageF out(W, H, kDepthCandidates);
  for (int y = 0; y < H; ++y) {
    for (int x = 0; x < W; ++x) {
      float* c = out.pixel(x, y);
      const float center = depth.at(x, y);
      for (int i = 1; i <= 9; ++i) {
        if (with_neighbors) {
          const auto [dx, dy] = depth_offset(i);
          const int sx = std::clamp(x + dx, 0, W - 1);
          const int sy = std::clamp(y + dy, 0, H - 1);
          c[i - 1] = depth.at(sx, sy);
        } else {
          c[i - 1] = center;
        }
      }
      c[9] = center + tau;
      c[10] = center - tau;
    }
  }
  return out;
}

DepthGuidance sort_and_upsample(const ImageF& candidates, int factor, float tau) {
  ImageF sorted = candidates;
  const int n = sorted.channels;
  for (size_t p = 0; p < sorted.pixel_count(); ++p) {
    float* v = &sorted.data[p * n];
    std::sort(v, v + n);
  }
  DepthGuidance g;
  g.candidates = factor > 1 ? fir_upsample(sorted, factor) : std::move(sorted);
  g.tau = tau;
  return g;
}

namespace {

SemanticGate gate_from(ImageF weights, ImageF opacity, float delta) {
  SemanticGate gate;
  gate.width = weights.width;
  gate.height = weights.height;
  gate.delta = delta;
  gate.weights = std::move(weights);
  gate.opacity = std::move(opacity);
  gate.gates.assign(gate.weights.pixel_count(), 0);

  for (int y = 0; y < gate.height; ++y) {
    for (int x = 0; x < gate.width; ++x) {
      if (gate.opacity.at(x, y) < kOpacityCutoff) continue;
      const float* w = gate.weights.pixel(x, y);
      PartMask m = 0;
      int argmax = 0;
      for (int k = 0; k < kPartCount; ++k) {
        if (w[k] >= delta) m |= PartMask(1u << k);
        if (w[k] > w[argmax]) argmax = k;
      }
      if (m == 0) m = PartMask(1u << argmax);
      gate.gates[size_t(y) * gate.width + x] = m;
    }
  }
  return gate;
}

}  // namespace

SemanticGate upsample_semantic(const ImageF& semantic, const ImageF& opacity, int factor,
                               float delta) {
  if (semantic.channels != kPartCount) throw std::invalid_argument("semantic image must have K channels");
  if (opacity.channels != 1 || opacity.width != semantic.width || opacity.height != semantic.height)
    throw std::invalid_argument("opacity image must match the semantic image");
  if (factor > 1)
    return gate_from(fir_upsample(semantic, factor), fir_upsample(opacity, factor), delta);
  return gate_from(semantic, opacity, delta);
}

SemanticGate make_gate(const ImageF& semantic, const ImageF& opacity, float delta) {
  return upsample_semantic(semantic, opacity, 1, delta);
}

}  // namespace semrad
