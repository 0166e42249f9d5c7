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

#include "semrad/image.hpp"
#include "semrad/scene.hpp"

namespace semrad {

// Separable 2x upsampling with the normalized FIR [1, 3, 3, 1]: the two
// output phases are the quarter-offset linear blends 0.25/0.75 of adjacent
// inputs (clamp-to-edge at borders). The even kernel carries a quarter-
// texel phase shift; `mirror_phase` flips its direction, and the repeated
// 4x path alternates phases so the net shift stays at an eighth of an
// input texel. Constants are preserved exactly.
ImageF fir_upsample2x(const ImageF& in, bool mirror_phase = false);

// Repeated 2x; factor must be a power of two.
ImageF fir_upsample(const ImageF& in, int factor);

// Every part's tri-plane upsampled 4x, standing in for the learned
// feature super-resolution; bboxes are unchanged.
struct HighResTriPlanes {
  std::array<TriPlane, kPartCount> planes;
  int factor = 4;
};

HighResTriPlanes upsample_triplanes(const SemanticScene& scene, int factor = 4);

}  // namespace semrad
