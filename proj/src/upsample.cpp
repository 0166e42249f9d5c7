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

#include "semrad/upsample.hpp"

#include <stdexcept>

namespace semrad {

namespace {

// One axis of the zero-insertion [1,3,3,1]/4 convolution. Default phase:
// out[2i] = 0.25 in[i-1] + 0.75 in[i], out[2i+1] = 0.75 in[i] + 0.25 in[i+1].
// Mirror phase swaps the pairing. `stride` walks the axis, `count` is the
// input length; channels are handled by the caller via base pointers.
void upsample_axis(const float* in, float* out, int count, size_t in_stride, size_t out_stride,
                   bool mirror) {
  auto fetch = [&](int i) { return in[size_t(std::clamp(i, 0, count - 1)) * in_stride]; };
  for (int i = 0; i < count; ++i) {
    const float prev = fetch(i - 1), cur = fetch(i), next = fetch(i + 1);
    float even, odd;
    if (!mirror) {
      even = 0.25f * prev + 0.75f * cur;
      odd = 0.75f * cur + 0.25f * next;
    } else {
      even = 0.75f * cur + 0.25f * next;
      odd = 0.25f * cur + 0.75f * next;
    }
    out[size_t(2 * i) * out_stride] = even;
    out[size_t(2 * i + 1) * out_stride] = odd;
  }
}

}  // namespace

ImageF fir_upsample2x(const ImageF& in, bool mirror_phase) {
  const int W = in.width, H = in.height, C = in.channels;
  // horizontal pass
  ImageF tmp(2 * W, H, C);
  for (int y = 0; y < H; ++y)
    for (int c = 0; c < C; ++c)
      upsample_axis(in.data.data() + (size_t(y) * W) * C + c,
                    tmp.data.data() + (size_t(y) * 2 * W) * C + c, W, C, C, mirror_phase);
  // vertical pass
  ImageF out(2 * W, 2 * H, C);
  const size_t row = size_t(2 * W) * C;
  for (int x = 0; x < 2 * W; ++x)
    for (int c = 0; c < C; ++c)
      upsample_axis(tmp.data.data() + size_t(x) * C + c, out.data.data() + size_t(x) * C + c, H,
                    row, row, mirror_phase);
  return out;
}

ImageF fir_upsample(const ImageF& in, int factor) {
  if (factor <= 0 || (factor & (factor - 1)) != 0)
    throw std::invalid_argument("upsample factor must be a power of two");
  ImageF img = in;
  bool mirror = false;
  for (int f = factor; f > 1; f /= 2) {
    img = fir_upsample2x(img, mirror);
    mirror = !mirror;  // alternate phases to cancel most of the kernel shift
  }
  return img;
}

HighResTriPlanes upsample_triplanes(const SemanticScene& scene, int factor) {
  HighResTriPlanes hi;
  hi.factor = factor;
  for (int k = 0; k < kPartCount; ++k) {
    const TriPlane& src = scene.parts[k].plane;
    TriPlane dst(src.resolution * factor, src.channels, src.bbox);
    for (int p = 0; p < 3; ++p) {
      ImageF tmp(src.resolution, src.resolution, src.channels);
      tmp.data = src.planes[p];
      const ImageF up = fir_upsample(tmp, factor);
      dst.planes[p] = up.data;
    }
    hi.planes[k] = std::move(dst);
  }
  return hi;
}

}  // namespace semrad
