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

#include "semrad/render.hpp"

#include <atomic>
#include <chrono>

#include "semrad/parallel.hpp"

namespace semrad {

namespace {

// Per-worker scratch so the hot loop never allocates.
struct Scratch {
  std::vector<float> coarse_depths;
  std::vector<float> coarse_segs;
  std::vector<float> coarse_weights;
  std::vector<float> raw_weights;
  std::vector<float> fine_depths;
  std::vector<Vec3> coarse_pts, fine_pts;
  std::vector<PointShading> coarse_shadings, fine_shadings;
  SampleSet samples;
};

// Quadrature weights padded with a max-blur over neighbors. The padding
// matters: a surface crossing falls between two strata, and the bin that
// ends at the first inside-sample would otherwise carry zero weight, so
// the importance pass would never resolve the crossing itself.
void compute_weights(const std::vector<float>& segs, const std::vector<PointShading>& shadings,
                     std::vector<float>& scratch, std::vector<float>& weights) {
  const size_t n = segs.size();
  scratch.resize(n);
  double transmittance = 1.0;
  for (size_t i = 0; i < n; ++i) {
    const double alpha = -std::expm1(-double(shadings[i].density) * double(segs[i]));
    scratch[i] = float(transmittance * alpha);
    transmittance *= 1.0 - alpha;
  }
  weights.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const float prev = i > 0 ? scratch[i - 1] : scratch[0];
    const float next = i + 1 < n ? scratch[i + 1] : scratch[n - 1];
    weights[i] = 0.5f * (std::max(prev, scratch[i]) + std::max(scratch[i], next));
  }
}

}  // namespace

RenderBuffers render_dense(const SemanticScene& scene, const Pose& pose, const Camera& camera,
                           const RenderParams& params,
                           const std::array<TriPlane, kPartCount>* hi_planes,
                           RenderStats* stats, ImageF* sample_depth_dump) {
  const auto t0 = std::chrono::steady_clock::now();
  scene.validate();
  camera.validate();
  params.density.validate();
  const PartMask mask = PartMask(scene.enabled_mask() & params.parts);
  if (mask == 0) throw EmptySceneError();

  const Deformer deformer = make_deformer(scene.skeleton, pose);
  const FieldView view{&scene, hi_planes, mask};
  const int W = camera.width, H = camera.height;
  const int n_total = params.n_coarse + params.n_fine;

  RenderBuffers out;
  out.color = ImageF(W, H, 3);
  out.semantic = ImageF(W, H, kPartCount);
  out.depth = ImageF(W, H, 1);
  out.normal = ImageF(W, H, 3);
  out.opacity = ImageF(W, H, 1);
  if (sample_depth_dump) *sample_depth_dump = ImageF(W, H, n_total);

  std::atomic<uint64_t> shading_evals{0}, normal_evals{0}, fallback_rays{0};

  parallel_tiles(W, H, params.workers, [&](TileRect tile) {
    Scratch scratch;
    EvalCounters counters;
    uint64_t tile_fallbacks = 0;

    for (int py = tile.y0; py < tile.y1; ++py) {
      for (int px = tile.x0; px < tile.x1; ++px) {
        const Ray ray = pixel_ray(camera, px, py, scene.t_near, scene.t_far);
        Rng rng(pixel_seed(params.seed, px, py));

        // coarse pass
        coarse_samples(ray, params.n_coarse, params.jitter, rng, scratch.coarse_depths);
        seg_lengths_from_depths(scratch.coarse_depths, ray.t_far, scratch.coarse_segs);
        SampleSet& samples = scratch.samples;
        samples.depths.clear();
        samples.seg_lengths.clear();
        samples.canonical.clear();
        samples.shadings.clear();

        auto shade_at = [&](float t, std::vector<Vec3>& pts, std::vector<PointShading>& shs) {
          const Vec3 x_posed = ray.origin + ray.dir * t;
          const Vec3 x = deformer.to_canonical(x_posed);
          pts.push_back(x);
          shs.push_back(shade_point(view, x, params.density, &counters));
        };

        scratch.coarse_pts.clear();
        scratch.coarse_shadings.clear();
        for (const float t : scratch.coarse_depths) shade_at(t, scratch.coarse_pts, scratch.coarse_shadings);

        if (params.n_fine > 0) {
          compute_weights(scratch.coarse_segs, scratch.coarse_shadings, scratch.raw_weights,
                          scratch.coarse_weights);
          const ImportanceResult ir =
              importance_samples(ray, scratch.coarse_depths, scratch.coarse_segs,
                                 scratch.coarse_weights, params.n_fine, rng, scratch.fine_depths);
          if (ir.uniform_fallback) ++tile_fallbacks;

          scratch.fine_pts.clear();
          scratch.fine_shadings.clear();
          for (const float t : scratch.fine_depths) shade_at(t, scratch.fine_pts, scratch.fine_shadings);

          // merge the two sorted passes; only the new points were shaded
          size_t a = 0, b = 0;
          while (a < scratch.coarse_depths.size() || b < scratch.fine_depths.size()) {
            const bool take_coarse =
                b >= scratch.fine_depths.size() ||
                (a < scratch.coarse_depths.size() && scratch.coarse_depths[a] <= scratch.fine_depths[b]);
            if (take_coarse) {
              samples.depths.push_back(scratch.coarse_depths[a]);
              samples.canonical.push_back(scratch.coarse_pts[a]);
              samples.shadings.push_back(scratch.coarse_shadings[a]);
              ++a;
            } else {
              samples.depths.push_back(scratch.fine_depths[b]);
              samples.canonical.push_back(scratch.fine_pts[b]);
              samples.shadings.push_back(scratch.fine_shadings[b]);
              ++b;
            }
          }
        } else {
          samples.depths = scratch.coarse_depths;
          samples.canonical = scratch.coarse_pts;
          samples.shadings = scratch.coarse_shadings;
        }
        seg_lengths_from_depths(samples.depths, ray.t_far, samples.seg_lengths);

        if (sample_depth_dump) {
          float* dump = sample_depth_dump->pixel(px, py);
          for (int i = 0; i < n_total; ++i) dump[i] = samples.depths[i];
        }

        auto normal_fn = [&](size_t i) {
          return normal_at(view, samples.canonical[i], params.normal_eps, &counters).normal;
        };
        const RaySums sums = integrate_ray(samples, normal_fn, params.render_normals);

        float* color = out.color.pixel(px, py);
        float* semantic = out.semantic.pixel(px, py);
        float* normal = out.normal.pixel(px, py);
        if (sums.opacity < kOpacityCutoff) {
          color[0] = params.background.x;
          color[1] = params.background.y;
          color[2] = params.background.z;
          out.depth.at(px, py) = ray.t_far;
          // semantics and opacity squashed to exact zero so that
          // sum_k S_k == opacity holds on background pixels too
        } else {
          const float bg = 1.0f - sums.opacity;
          color[0] = sums.color.x + bg * params.background.x;
          color[1] = sums.color.y + bg * params.background.y;
          color[2] = sums.color.z + bg * params.background.z;
          for (int k = 0; k < kPartCount; ++k) semantic[k] = sums.semantic[k];
          out.depth.at(px, py) = std::clamp(sums.depth_raw / sums.opacity, ray.t_near, ray.t_far);
          normal[0] = sums.normal.x;
          normal[1] = sums.normal.y;
          normal[2] = sums.normal.z;
          out.opacity.at(px, py) = sums.opacity;
        }
      }
    }

    shading_evals.fetch_add(counters.shading);
    normal_evals.fetch_add(counters.normal);
    fallback_rays.fetch_add(tile_fallbacks);
  });

  if (stats) {
    stats->shading_evals = shading_evals.load();
    stats->normal_evals = normal_evals.load();
    stats->importance_fallback_rays = fallback_rays.load();
    stats->wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

}  // namespace semrad
