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

#include <utility>

#include "semrad/image.hpp"
#include "semrad/scene.hpp"

namespace semrad {

inline constexpr int kDepthCandidates = 11;

// Neighborhood offsets for candidates 1..9 (1-based):
// dx = (i-1)/3 - 1, dy = (i-1)%3 - 1. Candidates 10 and 11 are the +/- tau
// probes around the pixel's own depth.
inline constexpr std::pair<int, int> depth_offset(int i) {
  return {(i - 1) / 3 - 1, (i - 1) % 3 - 1};
}

// Gathers each pixel's 11 depth candidates: the 3x3 neighborhood
// (clamp-to-edge at borders) plus D +/- tau. Passing with_neighbors=false
// replaces the neighborhood with the center depth replicated (the depth-
// aggregation ablation).
ImageF aggregate_depths(const ImageF& depth, float tau, bool with_neighbors = true);

// Per-pixel ascending candidate vectors at high resolution. Channel
// monotonicity survives the upsampling because the FIR is a non-negative
// combination of per-channel-sorted inputs.
struct DepthGuidance {
  ImageF candidates;  // n-channel, sorted ascending per pixel
  float tau = 0.0f;

  int count() const { return candidates.channels; }
};

// Sorts the candidate vector per pixel, then upsamples every channel
// independently with the repeated 2x FIR.
DepthGuidance sort_and_upsample(const ImageF& candidates, int factor, float tau);

// Upsampled semantic weights with per-pixel part gates. A part's gate
// opens where its upsampled weight reaches `delta` on a foreground pixel
// (upsampled opacity >= cutoff); if thresholding would close every gate of
// a foreground pixel, the strongest part stays open so the pixel remains
// renderable. Background pixels have all gates closed.
struct SemanticGate {
  ImageF weights;              // kPartCount channels
  ImageF opacity;              // 1 channel
  std::vector<PartMask> gates; // per pixel
  float delta = 0.0f;
  int width = 0, height = 0;

  PartMask gate(int x, int y) const { return gates[size_t(y) * width + x]; }
  bool foreground(int x, int y) const { return gate(x, y) != 0; }
};

SemanticGate upsample_semantic(const ImageF& semantic, const ImageF& opacity, int factor,
                               float delta);

// Assembles a gate without resampling (factor 1); used where guidance and
// render run at the same resolution.
SemanticGate make_gate(const ImageF& semantic, const ImageF& opacity, float delta);

}  // namespace semrad
