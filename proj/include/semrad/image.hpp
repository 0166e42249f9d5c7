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
#include <cstddef>
#include <vector>

namespace semrad {

// Channel-interleaved float image. Pixel (x, y) channel c lives at
// ((y * width + x) * channels + c); row 0 is the top of the image.
struct ImageF {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  ImageF() = default;
  ImageF(int w, int h, int c, float fill = 0.0f)
      : width(w), height(h), channels(c), data(size_t(w) * h * c, fill) {}

  float& at(int x, int y, int c = 0) {
    return data[(size_t(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c = 0) const {
    return data[(size_t(y) * width + x) * channels + c];
  }
  float* pixel(int x, int y) { return &data[(size_t(y) * width + x) * channels]; }
  const float* pixel(int x, int y) const { return &data[(size_t(y) * width + x) * channels]; }

  size_t pixel_count() const { return size_t(width) * height; }
  bool same_shape(const ImageF& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
};

}  // namespace semrad
