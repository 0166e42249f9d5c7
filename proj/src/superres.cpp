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

#include "semrad/superres.hpp"

#include <atomic>
#include <bit>
#include <chrono>

#include "semrad/parallel.hpp"

namespace semrad {

RenderBuffers render_highres_guided(const SemanticScene& scene, const HighResTriPlanes* hi,
                                    const Pose& pose, const Camera& camera,
                                    const DepthGuidance& guidance, const SemanticGate& gate,
                                    const GuidedParams& params, GuidedStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  scene.validate();
  camera.validate();
  params.density.validate();
  const PartMask scene_mask = PartMask(scene.enabled_mask() & params.parts);
  if (scene_mask == 0) throw EmptySceneError();
  const int W = camera.width, H = camera.height;
  if (guidance.candidates.width != W || guidance.candidates.height != H)
    throw std::runtime_error("guidance resolution does not match the camera");
  if (gate.width != W || gate.height != H)
    throw std::runtime_error("gate resolution does not match the camera");
  const float gap_floor = params.gap_floor < 0.0f ? guidance.tau * 0.25f : params.gap_floor;

  const Deformer deformer = make_deformer(scene.skeleton, pose);
  const FieldView base_view{&scene, hi ? &hi->planes : nullptr, scene_mask};
  const int n_candidates = guidance.count();

  RenderBuffers out;
  out.color = ImageF(W, H, 3);
  out.semantic = gate.weights;  // stage 2 emits the upsampled gate weights
  out.depth = ImageF(W, H, 1);
  out.normal = ImageF(W, H, 3);
  out.opacity = ImageF(W, H, 1);

  std::atomic<uint64_t> shading_evals{0}, normal_evals{0}, fg_pixels{0}, gate_sum{0};

  parallel_tiles(W, H, params.workers, [&](TileRect tile) {
    EvalCounters counters;
    uint64_t tile_fg = 0, tile_gates = 0;
    SampleSet samples;
    samples.depths.reserve(n_candidates);
    samples.seg_lengths.reserve(n_candidates);
    samples.canonical.reserve(n_candidates);
    samples.shadings.reserve(n_candidates);

    for (int py = tile.y0; py < tile.y1; ++py) {
      for (int px = tile.x0; px < tile.x1; ++px) {
        float* color = out.color.pixel(px, py);
        const PartMask gates = PartMask(gate.gate(px, py) & scene_mask);
        if (gates == 0) {
          // background: zero field evaluations
          color[0] = params.background.x;
          color[1] = params.background.y;
          color[2] = params.background.z;
          out.depth.at(px, py) = scene.t_far;
          for (int k = 0; k < kPartCount; ++k) out.semantic.at(px, py, k) = 0.0f;
          continue;
        }
        ++tile_fg;
        tile_gates += uint64_t(std::popcount(unsigned(gates)));

        const Ray ray = pixel_ray(camera, px, py, scene.t_near, scene.t_far);
        const FieldView view = base_view.with_mask(gates);
        const float* cand = guidance.candidates.pixel(px, py);

        samples.depths.clear();
        samples.seg_lengths.clear();
        samples.canonical.clear();
        samples.shadings.clear();
        for (int i = 0; i < n_candidates; ++i) {
          if (i > 0 && cand[i] == cand[i - 1]) continue;  // collapse duplicates
          samples.depths.push_back(cand[i]);
        }
        for (size_t i = 0; i + 1 < samples.depths.size(); ++i)
          samples.seg_lengths.push_back(std::max(samples.depths[i + 1] - samples.depths[i], gap_floor));
        samples.seg_lengths.push_back(std::max(ray.t_far - samples.depths.back(), gap_floor));

        for (const float t : samples.depths) {
          const Vec3 x = deformer.to_canonical(ray.origin + ray.dir * t);
          samples.canonical.push_back(x);
          samples.shadings.push_back(shade_point(view, x, params.density, &counters));
        }

        auto normal_fn = [&](size_t i) {
          return normal_at(view, samples.canonical[i], params.normal_eps, &counters).normal;
        };
        const RaySums sums = integrate_ray(samples, normal_fn, params.render_normals);

        if (sums.opacity < kOpacityCutoff) {
          color[0] = params.background.x;
          color[1] = params.background.y;
          color[2] = params.background.z;
          out.depth.at(px, py) = scene.t_far;
          for (int k = 0; k < kPartCount; ++k) out.semantic.at(px, py, k) = 0.0f;
        } else {
          const float bg = 1.0f - sums.opacity;
          color[0] = sums.color.x + bg * params.background.x;
          color[1] = sums.color.y + bg * params.background.y;
          color[2] = sums.color.z + bg * params.background.z;
          out.depth.at(px, py) = std::clamp(sums.depth_raw / sums.opacity, ray.t_near, ray.t_far);
          float* normal = out.normal.pixel(px, py);
          normal[0] = sums.normal.x;
          normal[1] = sums.normal.y;
          normal[2] = sums.normal.z;
          out.opacity.at(px, py) = sums.opacity;
        }
      }
    }

    shading_evals.fetch_add(counters.shading);
    normal_evals.fetch_add(counters.normal);
    fg_pixels.fetch_add(tile_fg);
    gate_sum.fetch_add(tile_gates);
  });

  if (stats) {
    stats->shading_evals = shading_evals.load();
    stats->normal_evals = normal_evals.load();
    stats->foreground_pixels = fg_pixels.load();
    stats->open_gate_sum = gate_sum.load();
    stats->dense_equivalent = uint64_t(72) * kPartCount * uint64_t(W) * uint64_t(H);
    stats->wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

GuidedStage run_guided_stage(const SemanticScene& scene, const HighResTriPlanes* hi,
                             const Pose& pose, const Camera& camera_lo,
                             const RenderBuffers& lowres, float tau, float delta,
                             const GuidedParams& params, int factor, bool depth_aggregation) {
  if (tau < 0.0f) tau = default_tau(scene);
  GuidedStage stage;
  stage.camera = camera_lo;
  stage.camera.width = camera_lo.width * factor;
  stage.camera.height = camera_lo.height * factor;

  const ImageF candidates = aggregate_depths(lowres.depth, tau, depth_aggregation);
  stage.guidance = sort_and_upsample(candidates, factor, tau);
  stage.gate = upsample_semantic(lowres.semantic, lowres.opacity, factor, delta);
  stage.buffers = render_highres_guided(scene, hi, pose, stage.camera, stage.guidance, stage.gate,
                                        params, &stage.stats);
  return stage;
}

}  // namespace semrad
