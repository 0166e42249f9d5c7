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

#include <cstdint>

#include "semrad/scene.hpp"

namespace semrad {

// Maps a part's signed distance (body prior + tri-plane offset) to density
// through a logistic. The paper-literal form is sign = +1; the default is
// sign = -1 so density saturates *inside* the surface.
struct DensityConfig {
  float beta = 0.001f;  // sigmoid sharpness, scene units
  int sign = -1;        // +1 paper-literal, -1 inside-dense
  float scale = 600.0f; // density ceiling, 1/scene-unit

  void validate() const {
    if (beta <= 0.0f) throw std::runtime_error("density beta must be positive");
    if (scale <= 0.0f) throw std::runtime_error("density scale must be positive");
    if (sign != 1 && sign != -1) throw std::runtime_error("density sign must be +1 or -1");
  }
};

// Shading of one canonical point: total density, semantic-blended color,
// and each part's share of the density.
struct PointShading {
  float density = 0.0f;
  Vec3 color;
  std::array<float, kPartCount> semantic{};
};

// shading = tri-plane interpolations for density/color; normal = tri-plane
// interpolations made by finite-difference normal probes. Kept separate so
// the sampling-reduction ledger counts exactly the radiance-field lookups.
struct EvalCounters {
  uint64_t shading = 0;
  uint64_t normal = 0;
};

// A scene with an optional high-res plane override and a part mask;
// the unit every shading query runs against.
struct FieldView {
  const SemanticScene* scene = nullptr;
  const std::array<TriPlane, kPartCount>* plane_override = nullptr;
  PartMask mask = kAllParts;

  const TriPlane& part_plane(int k) const {
    return plane_override ? (*plane_override)[k] : scene->parts[k].plane;
  }
  FieldView with_mask(PartMask m) const { return {scene, plane_override, m}; }
};

// sigma^k of Eq. 4 with explicit sharpness/sign/scale:
// scale * logistic(sign * (d_body + delta) / beta). Strictly positive and
// bounded by scale (up to float underflow far from the surface).
inline float part_density(float d_body, float delta, const DensityConfig& cfg) {
  return cfg.scale * logistic(float(cfg.sign) * (d_body + delta) / cfg.beta);
}

// Per-point compositing: sums part densities over the enabled mask,
// normalizes them into semantic weights, and blends part colors by those
// weights. Disabled parts contribute exactly zero. Throws EmptySceneError
// when the mask is empty.
inline PointShading shade_point(const FieldView& view, const Vec3& x, const DensityConfig& cfg,
                                EvalCounters* counters = nullptr) {
  if (view.mask == 0) throw EmptySceneError();
  const float d_body = view.scene->body.sdf(x);

  float sigma[kPartCount];
  Vec3 colors[kPartCount];
  PointShading out;
  float total = 0.0f;
  for (int k = 0; k < kPartCount; ++k) {
    if (!(view.mask & (1u << k))) {
      sigma[k] = 0.0f;
      continue;
    }
    const PartSample ps = sample_tri_plane(view.part_plane(k), x);
    if (counters) ++counters->shading;
    sigma[k] = view.scene->parts[k].density_scale * part_density(d_body, ps.sdf_offset, cfg);
    colors[k] = ps.color;
    total += sigma[k];
  }
  out.density = total;
  if (total > 0.0f) {
    const float inv = 1.0f / total;
    for (int k = 0; k < kPartCount; ++k) {
      if (sigma[k] == 0.0f) continue;
      const float w = sigma[k] * inv;
      out.semantic[k] = w;
      out.color += colors[k] * w;
    }
  }
  return out;
}

struct NormalResult {
  Vec3 normal{0, 0, 1};
  bool degenerate = false;
};

// Aggregate SDF whose gradient defines the normal:
// g(x) = d_body(x) + sum of enabled parts' tri-plane offsets.
inline float aggregate_sdf(const FieldView& view, const Vec3& x, EvalCounters* counters = nullptr) {
  float g = view.scene->body.sdf(x);
  for (int k = 0; k < kPartCount; ++k) {
    if (!(view.mask & (1u << k))) continue;
    g += sample_tri_plane(view.part_plane(k), x).sdf_offset;
    if (counters) ++counters->normal;
  }
  return g;
}

// Unit normal from central finite differences of the aggregate SDF.
// A vanishing gradient returns +Z with the degeneracy flag set.
inline NormalResult normal_at(const FieldView& view, const Vec3& x, float eps,
                              EvalCounters* counters = nullptr) {
  Vec3 grad;
  for (int axis = 0; axis < 3; ++axis) {
    Vec3 hi = x, lo = x;
    hi[axis] += eps;
    lo[axis] -= eps;
    grad[axis] = aggregate_sdf(view, hi, counters) - aggregate_sdf(view, lo, counters);
  }
  NormalResult r;
  const float len = length(grad);
  if (len < 1e-12f) {
    r.degenerate = true;
    return r;
  }
  r.normal = grad / len;
  return r;
}

}  // namespace semrad
