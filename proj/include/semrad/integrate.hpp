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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "semrad/shading.hpp"

namespace semrad {

// Ordered samples along one ray with their shadings. depths are strictly
// ascending; canonical holds the deformed positions so normals can be
// evaluated lazily after the quadrature weights are known.
struct SampleSet {
  std::vector<float> depths;
  std::vector<float> seg_lengths;
  std::vector<Vec3> canonical;
  std::vector<PointShading> shadings;

  void validate() const {
    const size_t n = depths.size();
    if (seg_lengths.size() != n || shadings.size() != n)
      throw std::runtime_error("sample set arrays disagree in length");
    for (size_t i = 0; i + 1 < n; ++i)
      if (!(depths[i] < depths[i + 1])) throw std::runtime_error("sample depths must be strictly ascending");
    for (const float s : seg_lengths)
      if (!(s > 0.0f)) throw std::runtime_error("sample intervals must be positive");
  }
};

struct RaySums {
  Vec3 color;
  std::array<float, kPartCount> semantic{};
  float depth_raw = 0.0f;  // integral of w_i * t_i, not opacity-normalized
  Vec3 normal;             // unit where defined, zero otherwise
  float opacity = 0.0f;
};

// Normal integrands are evaluated only where a sample's quadrature weight
// exceeds this; finite-difference normals dominate the shading cost.
inline constexpr float kNormalWeightCutoff = 1e-4f;

// Discrete transmittance quadrature:
//   alpha_i = 1 - exp(-sigma_i * delta_i),  T_i = prod_{j<i} (1 - alpha_j),
//   w_i = T_i * alpha_i;
// color/semantic/depth are weight sums, the normal is the normalized
// weight sum of pointwise normals. NormalFn(i) -> Vec3; pass
// integrate_ray(s) to skip normals.
template <typename NormalFn>
RaySums integrate_ray(const SampleSet& s, NormalFn&& normal_fn, bool with_normals = true) {
  RaySums out;
  double transmittance = 1.0;
  double color[3] = {0, 0, 0};
  double semantic[kPartCount] = {};
  double depth = 0.0;
  double normal[3] = {0, 0, 0};
  double opacity = 0.0;

  const size_t n = s.depths.size();
  for (size_t i = 0; i < n; ++i) {
    const PointShading& sh = s.shadings[i];
    const double alpha = -std::expm1(-double(sh.density) * double(s.seg_lengths[i]));
    const double w = transmittance * alpha;
    if (w > 0.0) {
      color[0] += w * sh.color.x;
      color[1] += w * sh.color.y;
      color[2] += w * sh.color.z;
      for (int k = 0; k < kPartCount; ++k) semantic[k] += w * sh.semantic[k];
      depth += w * s.depths[i];
      opacity += w;
      if (with_normals && w > kNormalWeightCutoff) {
        const Vec3 nrm = normal_fn(i);
        normal[0] += w * nrm.x;
        normal[1] += w * nrm.y;
        normal[2] += w * nrm.z;
      }
    }
    transmittance *= 1.0 - alpha;
  }

  out.color = {float(color[0]), float(color[1]), float(color[2])};
  for (int k = 0; k < kPartCount; ++k) out.semantic[k] = float(semantic[k]);
  out.depth_raw = float(depth);
  out.opacity = float(opacity);
  const double nlen = std::sqrt(normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]);
  if (nlen > 1e-12)
    out.normal = {float(normal[0] / nlen), float(normal[1] / nlen), float(normal[2] / nlen)};
  return out;
}

inline RaySums integrate_ray(const SampleSet& s) {
  return integrate_ray(s, [](size_t) { return Vec3{}; }, false);
}

}  // namespace semrad
