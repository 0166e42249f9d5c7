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

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "semrad/vec.hpp"

namespace semrad {

// A 3D field stored as three axis-aligned feature planes (XY, XZ, YZ).
// A sample projects the query point onto each plane, bilinearly
// interpolates it, and sums the three results channel-wise.
//
// Grid convention: texel (i, j) of a plane samples the field at parameter
// (i/res, j/res) of the bbox axes, so every texel position at resolution R
// is also a texel position at 2R and cross-resolution bakes stay bit-equal
// at shared positions.
struct TriPlane {
  enum PlaneIndex { kXY = 0, kXZ = 1, kYZ = 2 };

  int resolution = 0;  // texels per side, power of two
  int channels = 0;    // >= 4: 1 SDF offset + 3 color
  Aabb bbox;
  std::vector<float> planes[3];  // row-major, channel-interleaved

  TriPlane() = default;
  TriPlane(int res, int ch, const Aabb& box) : resolution(res), channels(ch), bbox(box) {
    if (res <= 0 || (res & (res - 1)) != 0) throw std::invalid_argument("tri-plane resolution must be a power of two");
    if (ch < 4) throw std::invalid_argument("tri-plane needs at least 4 channels");
    for (auto& p : planes) p.assign(size_t(res) * res * ch, 0.0f);
  }

  float* texel(int plane, int i, int j) {
    return &planes[plane][(size_t(j) * resolution + i) * channels];
  }
  const float* texel(int plane, int i, int j) const {
    return &planes[plane][(size_t(j) * resolution + i) * channels];
  }

  // World coordinate of texel index i along an axis.
  float texel_coord(int axis, int i) const {
    const float lo = bbox.lo[axis], hi = bbox.hi[axis];
    return lo + (hi - lo) * (float(i) / float(resolution));
  }
};

// Per-part field value at a point: SDF offset plus color.
struct PartSample {
  float sdf_offset = 0.0f;
  Vec3 color;
};

namespace detail {

// Bilinear fetch of `channels` floats into out[]; (u, v) in world units.
inline void bilinear_accum(const std::vector<float>& plane, int res, int channels,
                           float lo_u, float inv_extent_u, float lo_v, float inv_extent_v,
                           float u, float v, float* out) {
  float tu = (u - lo_u) * inv_extent_u * float(res);
  float tv = (v - lo_v) * inv_extent_v * float(res);
  tu = std::clamp(tu, 0.0f, float(res - 1));
  tv = std::clamp(tv, 0.0f, float(res - 1));
  const int i0 = std::min(int(tu), res - 2 >= 0 ? res - 2 : 0);
  const int j0 = std::min(int(tv), res - 2 >= 0 ? res - 2 : 0);
  const float fu = tu - float(i0);
  const float fv = tv - float(j0);
  const int i1 = std::min(i0 + 1, res - 1);
  const int j1 = std::min(j0 + 1, res - 1);
  const float* t00 = &plane[(size_t(j0) * res + i0) * channels];
  const float* t10 = &plane[(size_t(j0) * res + i1) * channels];
  const float* t01 = &plane[(size_t(j1) * res + i0) * channels];
  const float* t11 = &plane[(size_t(j1) * res + i1) * channels];
  const float w00 = (1.0f - fu) * (1.0f - fv);
  const float w10 = fu * (1.0f - fv);
  const float w01 = (1.0f - fu) * fv;
  const float w11 = fu * fv;
  for (int c = 0; c < channels; ++c)
    out[c] += w00 * t00[c] + w10 * t10[c] + w01 * t01[c] + w11 * t11[c];
}

}  // namespace detail

// Channel-wise sum of the three bilinearly sampled planes, split into
// {sdf_offset, color}. Points outside the bbox return the distance to the
// box as the offset and black, which drives density to zero far away.
// Color is clamped to [0, 1] after sampling.
inline PartSample sample_tri_plane(const TriPlane& tp, const Vec3& p) {
  PartSample out;
  if (!tp.bbox.contains(p)) {
    out.sdf_offset = tp.bbox.distance(p);
    return out;
  }
  float acc[4] = {0, 0, 0, 0};
  const Vec3 ext = tp.bbox.extent();
  const float inv_x = 1.0f / ext.x, inv_y = 1.0f / ext.y, inv_z = 1.0f / ext.z;
  detail::bilinear_accum(tp.planes[TriPlane::kXY], tp.resolution, tp.channels,
                         tp.bbox.lo.x, inv_x, tp.bbox.lo.y, inv_y, p.x, p.y, acc);
  detail::bilinear_accum(tp.planes[TriPlane::kXZ], tp.resolution, tp.channels,
                         tp.bbox.lo.x, inv_x, tp.bbox.lo.z, inv_z, p.x, p.z, acc);
  detail::bilinear_accum(tp.planes[TriPlane::kYZ], tp.resolution, tp.channels,
                         tp.bbox.lo.y, inv_y, tp.bbox.lo.z, inv_z, p.y, p.z, acc);
  out.sdf_offset = acc[0];
  out.color = clamp01(Vec3{acc[1], acc[2], acc[3]});
  return out;
}

}  // namespace semrad
