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

namespace semrad {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Small counter-based generator; identical sequences on every platform and
// thread layout, which the renderer's determinism contract relies on.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(splitmix64(seed)) {}

  uint64_t next_u64() {
    state_ = splitmix64(state_);
    return state_;
  }

  // Uniform in [0, 1).
  float next_float() {
    return float(next_u64() >> 40) * (1.0f / 16777216.0f);
  }

 private:
  uint64_t state_;
};

// Per-pixel stream seed: hash of (frame seed, pixel x, pixel y).
inline uint64_t pixel_seed(uint64_t frame_seed, int px, int py) {
  uint64_t h = splitmix64(frame_seed ^ 0x5bf03635ebc7f4a1ULL);
  h = splitmix64(h ^ uint64_t(uint32_t(px)));
  h = splitmix64(h ^ uint64_t(uint32_t(py)));
  return h;
}

}  // namespace semrad
