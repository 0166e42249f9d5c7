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

#include <span>
#include <vector>

#include "semrad/camera.hpp"
#include "semrad/rng.hpp"

namespace semrad {

// Stratified depths: one sample in each of n equal [t_near, t_far] bins.
// With jitter off, bin midpoints. The caller seeds rng per pixel, so the
// result is deterministic regardless of the thread layout.
void coarse_samples(const Ray& ray, int n, bool jitter, Rng& rng, std::vector<float>& out);

// Quadrature intervals delta_i = t_{i+1} - t_i, last interval t_far - t_last.
void seg_lengths_from_depths(std::span<const float> depths, float t_far, std::vector<float>& out);

struct ImportanceResult {
  bool uniform_fallback = false;
};

// Inverse-CDF sampling of m depths from the piecewise-constant PDF over
// bins [depth_i, depth_i + seg_i) with mass weights[i]. All-zero weights
// fall back to stratified-uniform over [t_near, t_far] and set the flag.
// Output is ascending (stratified CDF positions preserve order).
ImportanceResult importance_samples(const Ray& ray, std::span<const float> depths,
                                    std::span<const float> seg_lengths,
                                    std::span<const float> weights, int m, Rng& rng,
                                    std::vector<float>& out);

}  // namespace semrad
