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

#include "semrad/sampling.hpp"

#include <stdexcept>

namespace semrad {

void coarse_samples(const Ray& ray, int n, bool jitter, Rng& rng, std::vector<float>& out) {
  if (n < 2) throw std::invalid_argument("coarse sampling needs n >= 2");
  out.resize(n);
  const float span = ray.t_far - ray.t_near;
  const float h = span / float(n);
  for (int i = 0; i < n; ++i) {
    const float xi = jitter ? rng.next_float() : 0.5f;
    out[i] = ray.t_near + (float(i) + xi) * h;
  }
}

void seg_lengths_from_depths(std::span<const float> depths, float t_far, std::vector<float>& out) {
  const size_t n = depths.size();
  out.resize(n);
  for (size_t i = 0; i + 1 < n; ++i) out[i] = depths[i + 1] - depths[i];
  if (n > 0) out[n - 1] = t_far - depths[n - 1];
}

ImportanceResult importance_samples(const Ray& ray, std::span<const float> depths,
                                    std::span<const float> seg_lengths,
                                    std::span<const float> weights, int m, Rng& rng,
                                    std::vector<float>& out) {
  ImportanceResult res;
  out.resize(m);

  double total = 0.0;
  for (const float w : weights) total += w;
  if (!(total > 0.0)) {
    // nothing hit: stratified-uniform over the full range
    res.uniform_fallback = true;
    const float h = (ray.t_far - ray.t_near) / float(m);
    for (int i = 0; i < m; ++i) out[i] = ray.t_near + (float(i) + rng.next_float()) * h;
    return res;
  }

  const size_t n = weights.size();
  size_t bin = 0;
  double cdf_lo = 0.0, cdf_hi = double(weights[0]);
  for (int j = 0; j < m; ++j) {
    const double target = (double(j) + double(rng.next_float())) / double(m) * total;
    while (target >= cdf_hi && bin + 1 < n) {
      ++bin;
      cdf_lo = cdf_hi;
      cdf_hi += double(weights[bin]);
    }
    const double denom = cdf_hi - cdf_lo;
    const double frac = denom > 0.0 ? (target - cdf_lo) / denom : 0.5;
    out[j] = depths[bin] + float(frac) * seg_lengths[bin];
  }
  return res;
}

}  // namespace semrad
