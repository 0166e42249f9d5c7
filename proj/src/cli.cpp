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

#include "semrad/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semrad/io.hpp"
#include "semrad/metrics.hpp"
#include "semrad/recipe.hpp"
#include "semrad/superres.hpp"

namespace semrad::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Everything a run needs; serialized as run.json so any invocation can be
// replayed with --config alone.
struct RunConfig {
  std::string subcommand;

  // paths
  std::string scene;    // recipe json (bake)
  std::string pack;     // baked scene pack
  std::string out;      // output file or directory
  std::string pose;     // pose json path
  std::string camera;   // camera json path
  std::string lowres;   // render output dir (superres)
  std::string poses;    // pose sequence (animate)
  std::string input_a, input_b;  // metrics compare / consistency

  // resolved inputs, embedded for replay
  json camera_json;
  json pose_json = json::object();

  // knobs
  int res = 256;           // bake resolution
  uint64_t seed = 0;
  int samples = 36;        // coarse
  int fine = 36;           // importance
  bool jitter = true;
  double beta = 0.001;
  int density_sign = -1;
  double density_scale = 600.0;
  double tau = -1.0;       // <0: (t_far - t_near)/72
  double delta = 0.0005;
  int workers = -1;
  int factor = 4;
  std::vector<double> background{1.0, 1.0, 1.0};
  std::string parts = "all";
  bool no_depth_aggregation = false;
  bool no_normals = false;
  bool hires = false;      // oracle on upsampled planes
  int oracle_coarse = 72;
  int oracle_fine = 72;
  int frames = 0;  // 0 = one frame per pose-sequence entry
  bool orbit = false;
  std::string workers_list = "1,0";  // bench
  std::string part = "";             // garment check
  std::string mode = "compare";      // metrics mode

  std::string config_path;           // not serialized; parsed up front
};

json config_to_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["scene"] = c.scene;
  j["pack"] = c.pack;
  j["out"] = c.out;
  j["pose_path"] = c.pose;
  j["camera_path"] = c.camera;
  j["lowres"] = c.lowres;
  j["poses"] = c.poses;
  j["input_a"] = c.input_a;
  j["input_b"] = c.input_b;
  j["camera"] = c.camera_json;
  j["pose"] = c.pose_json;
  j["res"] = c.res;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["fine"] = c.fine;
  j["jitter"] = c.jitter;
  j["beta"] = c.beta;
  j["density_sign"] = c.density_sign;
  j["density_scale"] = c.density_scale;
  j["tau"] = c.tau;
  j["delta"] = c.delta;
  j["workers"] = c.workers;
  j["factor"] = c.factor;
  j["background"] = c.background;
  j["parts"] = c.parts;
  j["no_depth_aggregation"] = c.no_depth_aggregation;
  j["no_normals"] = c.no_normals;
  j["hires"] = c.hires;
  j["oracle_coarse"] = c.oracle_coarse;
  j["oracle_fine"] = c.oracle_fine;
  j["frames"] = c.frames;
  j["orbit"] = c.orbit;
  j["workers_list"] = c.workers_list;
  j["part"] = c.part;
  j["mode"] = c.mode;
  return j;
}

void config_from_json(const json& j, RunConfig& c) {
  c.subcommand = j.value("subcommand", c.subcommand);
  c.scene = j.value("scene", c.scene);
  c.pack = j.value("pack", c.pack);
  c.out = j.value("out", c.out);
  c.pose = j.value("pose_path", c.pose);
  c.camera = j.value("camera_path", c.camera);
  c.lowres = j.value("lowres", c.lowres);
  c.poses = j.value("poses", c.poses);
  c.input_a = j.value("input_a", c.input_a);
  c.input_b = j.value("input_b", c.input_b);
  if (j.contains("camera")) c.camera_json = j["camera"];
  if (j.contains("pose")) c.pose_json = j["pose"];
  c.res = j.value("res", c.res);
  c.seed = j.value("seed", c.seed);
  c.samples = j.value("samples", c.samples);
  c.fine = j.value("fine", c.fine);
  c.jitter = j.value("jitter", c.jitter);
  c.beta = j.value("beta", c.beta);
  c.density_sign = j.value("density_sign", c.density_sign);
  c.density_scale = j.value("density_scale", c.density_scale);
  c.tau = j.value("tau", c.tau);
  c.delta = j.value("delta", c.delta);
  c.workers = j.value("workers", c.workers);
  c.factor = j.value("factor", c.factor);
  if (j.contains("background")) c.background = j["background"].get<std::vector<double>>();
  c.parts = j.value("parts", c.parts);
  c.no_depth_aggregation = j.value("no_depth_aggregation", c.no_depth_aggregation);
  c.no_normals = j.value("no_normals", c.no_normals);
  c.hires = j.value("hires", c.hires);
  c.oracle_coarse = j.value("oracle_coarse", c.oracle_coarse);
  c.oracle_fine = j.value("oracle_fine", c.oracle_fine);
  c.frames = j.value("frames", c.frames);
  c.orbit = j.value("orbit", c.orbit);
  c.workers_list = j.value("workers_list", c.workers_list);
  c.part = j.value("part", c.part);
  c.mode = j.value("mode", c.mode);
}

// ------------------------------------------------------------ helpers ---

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
  json j;
  in >> j;
  return j;
}

json default_camera_json(int resolution) {
  json j;
  j["position"] = {0.0, 0.0, 2.2};
  j["look_at"] = {0.0, 0.0, 0.0};
  j["up"] = {0.0, 1.0, 0.0};
  j["fov_deg"] = 45.0;
  j["resolution"] = resolution;
  return j;
}

Camera camera_from_json(const json& j) {
  auto vec = [](const json& a) { return Vec3{a[0].get<float>(), a[1].get<float>(), a[2].get<float>()}; };
  const Vec3 position = vec(j.at("position"));
  const Vec3 target = vec(j.at("look_at"));
  const Vec3 up = j.contains("up") ? vec(j["up"]) : Vec3{0, 1, 0};
  const float fov_deg = j.value("fov_deg", 45.0f);
  const int resolution = j.value("resolution", 256);
  return make_lookat(position, target, up, fov_deg * kPi / 180.0f, resolution, resolution);
}

Pose pose_from_json(const json& j) {
  Pose p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (!v.is_array() || v.size() != 3)
      throw std::runtime_error("pose rotation must be a 3-element axis-angle: " + it.key());
    p.rotations[it.key()] = Vec3{v[0].get<float>(), v[1].get<float>(), v[2].get<float>()};
  }
  return p;
}

PartMask parse_parts(const std::string& spec) {
  if (spec.empty() || spec == "all") return kAllParts;
  PartMask m = 0;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    bool found = false;
    for (int k = 0; k < kPartCount; ++k) {
      if (token == kPartNames[k]) {
        m |= PartMask(1u << k);
        found = true;
        break;
      }
    }
    if (!found) throw UsageError("unknown part name: " + token);
  }
  return m;
}

void resolve_inputs(RunConfig& c) {
  if (c.camera_json.is_null() || c.camera_json.empty()) {
    c.camera_json = c.camera.empty() ? default_camera_json(c.res) : load_json_file(c.camera, "camera file");
  }
  if (!c.pose.empty() && c.pose_json.empty()) c.pose_json = load_json_file(c.pose, "pose file");
}

RenderParams render_params(const RunConfig& c) {
  RenderParams p;
  p.n_coarse = c.samples;
  p.n_fine = c.fine;
  p.jitter = c.jitter;
  p.seed = c.seed;
  p.density.beta = float(c.beta);
  p.density.sign = c.density_sign;
  p.density.scale = float(c.density_scale);
  p.density.validate();
  p.background = {float(c.background.at(0)), float(c.background.at(1)), float(c.background.at(2))};
  p.workers = c.workers;
  p.parts = parse_parts(c.parts);
  p.render_normals = !c.no_normals;
  if (p.n_coarse < 2) throw UsageError("--samples must be at least 2");
  if (p.n_fine < 0) throw UsageError("--fine must be non-negative");
  return p;
}

GuidedParams guided_params(const RunConfig& c) {
  GuidedParams p;
  p.density.beta = float(c.beta);
  p.density.sign = c.density_sign;
  p.density.scale = float(c.density_scale);
  p.density.validate();
  p.background = {float(c.background.at(0)), float(c.background.at(1)), float(c.background.at(2))};
  p.workers = c.workers;
  p.parts = parse_parts(c.parts);
  p.render_normals = !c.no_normals;
  return p;
}

void write_run_json(const fs::path& path, const RunConfig& c) {
  atomic_write(path, config_to_json(c).dump(2) + "\n");
}

json stats_to_json(const GuidedStats& s) {
  json j;
  j["evaluations_guided"] = s.shading_evals;
  j["evaluations_dense_equivalent"] = s.dense_equivalent;
  j["reduction_ratio"] = s.reduction_ratio();
  j["open_gates_mean"] = s.open_gates_mean();
  j["normal_evaluations"] = s.normal_evals;
  j["foreground_pixels"] = s.foreground_pixels;
  j["wall_seconds"] = s.wall_seconds;
  return j;
}

// ------------------------------------------------------- subcommands ---

int cmd_bake(RunConfig& c) {
  if (c.scene.empty() || c.out.empty()) throw UsageError("bake needs --scene and --out");
  if (c.res <= 0 || (c.res & (c.res - 1)) != 0) throw UsageError("--res must be a power of two");
  const Recipe recipe = load_recipe(c.scene);
  const SemanticScene scene = bake_scene(recipe, c.res, c.seed);
  save_pack(c.out, scene);
  write_run_json(c.out + ".run.json", c);
  std::cout << "baked " << recipe.name << " at " << c.res << "^2 -> " << c.out << "\n";
  return 0;
}

int cmd_render(RunConfig& c) {
  if (c.pack.empty() || c.out.empty()) throw UsageError("render needs --pack and --out");
  resolve_inputs(c);
  const SemanticScene scene = load_pack(c.pack);
  const Camera camera = camera_from_json(c.camera_json);
  const Pose pose = pose_from_json(c.pose_json);
  RenderStats stats;
  const RenderBuffers buffers = render_dense(scene, pose, camera, render_params(c), nullptr, &stats);
  save_buffers(c.out, buffers);
  write_run_json(fs::path(c.out) / "run.json", c);
  json s;
  s["shading_evaluations"] = stats.shading_evals;
  s["normal_evaluations"] = stats.normal_evals;
  s["wall_seconds"] = stats.wall_seconds;
  atomic_write(fs::path(c.out) / "stats.json", s.dump(2) + "\n");
  std::cout << "rendered " << camera.width << "x" << camera.height << " -> " << c.out << " ("
            << stats.shading_evals << " field evals)\n";
  return 0;
}

int cmd_superres(RunConfig& c) {
  if (c.pack.empty() || c.lowres.empty() || c.out.empty())
    throw UsageError("superres needs --pack, --lowres and --out");
  const SemanticScene scene = load_pack(c.pack);

  // camera and pose replay from the low-res run
  const json lowres_run = load_json_file((fs::path(c.lowres) / "run.json").string(), "low-res run.json");
  RunConfig lc;
  config_from_json(lowres_run, lc);
  const Camera camera_lo = camera_from_json(lc.camera_json);
  const Pose pose = pose_from_json(lc.pose_json);
  c.camera_json = lc.camera_json;
  c.pose_json = lc.pose_json;

  const RenderBuffers lowres = load_buffers(c.lowres);
  const HighResTriPlanes hi = upsample_triplanes(scene, c.factor);
  const GuidedStage stage = run_guided_stage(scene, &hi, pose, camera_lo, lowres, float(c.tau),
                                             float(c.delta), guided_params(c), c.factor,
                                             !c.no_depth_aggregation);
  save_buffers(c.out, stage.buffers);
  write_run_json(fs::path(c.out) / "run.json", c);
  atomic_write(fs::path(c.out) / "stats.json", stats_to_json(stage.stats).dump(2) + "\n");
  std::cout << "superres " << stage.camera.width << "x" << stage.camera.height << " -> " << c.out
            << " (ratio " << stage.stats.reduction_ratio() << ", open gates "
            << stage.stats.open_gates_mean() << ")\n";
  return 0;
}

int cmd_oracle(RunConfig& c) {
  if (c.pack.empty() || c.out.empty()) throw UsageError("oracle needs --pack and --out");
  resolve_inputs(c);
  const SemanticScene scene = load_pack(c.pack);
  Camera camera = camera_from_json(c.camera_json);
  const Pose pose = pose_from_json(c.pose_json);

  std::optional<HighResTriPlanes> hi;
  if (c.hires) {
    hi = upsample_triplanes(scene, c.factor);
    camera.width *= c.factor;
    camera.height *= c.factor;
  }
  RenderStats stats;
  const RenderBuffers buffers =
      render_dense_oracle(scene, pose, camera, c.oracle_coarse, c.oracle_fine,
                          hi ? &hi->planes : nullptr, render_params(c), &stats);
  save_buffers(c.out, buffers);
  write_run_json(fs::path(c.out) / "run.json", c);
  json s;
  s["shading_evaluations"] = stats.shading_evals;
  s["normal_evaluations"] = stats.normal_evals;
  s["wall_seconds"] = stats.wall_seconds;
  atomic_write(fs::path(c.out) / "stats.json", s.dump(2) + "\n");
  std::cout << "oracle " << camera.width << "x" << camera.height << " (" << c.oracle_coarse << "+"
            << c.oracle_fine << " samples) -> " << c.out << "\n";
  return 0;
}

int cmd_metrics(RunConfig& c) {
  json report;
  if (c.mode == "compare") {
    if (c.input_a.empty() || c.input_b.empty()) throw UsageError("metrics compare needs --a and --b");
    const ImageF a = read_png(fs::path(c.input_a) / "color.png");
    const ImageF b = read_png(fs::path(c.input_b) / "color.png");
    const Psnr p = psnr(a, b);
    report["psnr"] = p.infinite ? json("inf") : json(p.db);
    report["mae"] = mean_abs_error(a, b);
  } else if (c.mode == "consistency") {
    if (c.input_a.empty() || c.input_b.empty())
      throw UsageError("metrics consistency needs --a (high res) and --b (low res)");
    const ImageF hi = read_png(fs::path(c.input_a) / "color.png");
    const ImageF lo = read_png(fs::path(c.input_b) / "color.png");
    report["upsample_consistency"] = upsample_consistency(hi, lo);
  } else if (c.mode == "garment-check") {
    if (c.pack.empty() || c.part.empty()) throw UsageError("metrics garment-check needs --pack and --part");
    resolve_inputs(c);
    const SemanticScene scene = load_pack(c.pack);
    const Camera camera = camera_from_json(c.camera_json);
    const Pose pose = pose_from_json(c.pose_json);
    int part = -1;
    for (int k = 0; k < kPartCount; ++k)
      if (c.part == kPartNames[k]) part = k;
    if (part < 0) throw UsageError("unknown part: " + c.part);
    const GarmentCheck g = garment_extraction_check(scene, part, pose, camera, render_params(c));
    report["part"] = c.part;
    report["hidden_mae"] = g.hidden_mae;
    report["visible_mae"] = g.visible_mae;
    report["hidden_pixels"] = g.hidden_pixels;
    report["visible_pixels"] = g.visible_pixels;
    report["pass"] = g.pass();
  } else {
    throw UsageError("unknown metrics mode: " + c.mode);
  }

  const std::string text = report.dump(2) + "\n";
  if (!c.out.empty()) {
    atomic_write(c.out, text);
    write_run_json(c.out + ".run.json", c);
  }
  std::cout << text;
  return 0;
}

int cmd_bench(RunConfig& c) {
  if (c.pack.empty() || c.out.empty()) throw UsageError("bench needs --pack and --out");
  resolve_inputs(c);
  const SemanticScene scene = load_pack(c.pack);
  Camera camera_lo = camera_from_json(c.camera_json);
  const Pose pose = pose_from_json(c.pose_json);

  std::vector<int> worker_counts;
  {
    std::stringstream ss(c.workers_list);
    std::string token;
    while (std::getline(ss, token, ',')) worker_counts.push_back(std::stoi(token));
    if (worker_counts.empty()) throw UsageError("--workers-list is empty");
  }

  const HighResTriPlanes hi = upsample_triplanes(scene, c.factor);
  std::ostringstream csv;
  csv << "stage,resolution,workers,wall_seconds,shading_evals,normal_evals\n";

  for (const int workers : worker_counts) {
    RunConfig rc = c;
    rc.workers = workers;
    const RenderParams rp = render_params(rc);
    const GuidedParams gp = guided_params(rc);

    RenderStats dense_lo;
    const RenderBuffers lowres = render_dense(scene, pose, camera_lo, rp, nullptr, &dense_lo);
    csv << "dense," << camera_lo.width << "," << workers << "," << dense_lo.wall_seconds << ","
        << dense_lo.shading_evals << "," << dense_lo.normal_evals << "\n";

    Camera camera_hi = camera_lo;
    camera_hi.width *= c.factor;
    camera_hi.height *= c.factor;
    RenderStats dense_hi;
    render_dense(scene, pose, camera_hi, rp, &hi.planes, &dense_hi);
    csv << "dense," << camera_hi.width << "," << workers << "," << dense_hi.wall_seconds << ","
        << dense_hi.shading_evals << "," << dense_hi.normal_evals << "\n";

    const GuidedStage stage = run_guided_stage(scene, &hi, pose, camera_lo, lowres, float(c.tau),
                                               float(c.delta), gp, c.factor, true);
    csv << "guided," << camera_hi.width << "," << workers << "," << stage.stats.wall_seconds << ","
        << stage.stats.shading_evals << "," << stage.stats.normal_evals << "\n";
  }

  atomic_write(c.out, csv.str());
  write_run_json(c.out + ".run.json", c);
  std::cout << csv.str();
  return 0;
}

int cmd_animate(RunConfig& c) {
  if (c.pack.empty() || c.out.empty()) throw UsageError("animate needs --pack and --out");
  if (c.frames < 0) throw UsageError("--frames must be positive");
  resolve_inputs(c);
  const SemanticScene scene = load_pack(c.pack);
  const Camera camera_base = camera_from_json(c.camera_json);

  std::vector<json> frame_poses;
  if (!c.poses.empty()) {
    const json seq = load_json_file(c.poses, "pose sequence");
    const json& arr = seq.is_array() ? seq : seq.at("frames");
    for (const json& f : arr) frame_poses.push_back(f);
    if (frame_poses.empty()) throw std::runtime_error("pose sequence holds no frames");
  } else {
    frame_poses.push_back(c.pose_json);
  }
  if (c.frames == 0) c.frames = int(frame_poses.size());

  const HighResTriPlanes hi = upsample_triplanes(scene, c.factor);
  const RenderParams rp = render_params(c);
  const GuidedParams gp = guided_params(c);

  for (int f = 0; f < c.frames; ++f) {
    const json& pose_json = frame_poses[size_t(f) % frame_poses.size()];
    const Pose pose = pose_from_json(pose_json);

    Camera camera = camera_base;
    if (c.orbit) {
      // rotate about the vertical axis through the look-at point
      const json& cj = c.camera_json;
      const Vec3 target{cj.at("look_at")[0].get<float>(), cj.at("look_at")[1].get<float>(),
                        cj.at("look_at")[2].get<float>()};
      const Vec3 offset = camera_base.position - target;
      const float angle = 2.0f * kPi * float(f) / float(c.frames);
      const Mat3 rot = Mat3::from_axis_angle(Vec3{0, angle, 0});
      camera = make_lookat(target + rot * offset, target, Vec3{0, 1, 0}, camera_base.fov_y,
                           camera_base.width, camera_base.height);
    }

    char name[32];
    std::snprintf(name, sizeof(name), "frame_%03d", f);
    const fs::path frame_dir = fs::path(c.out) / name;

    const RenderBuffers lowres = render_dense(scene, pose, camera, rp);
    save_buffers(frame_dir / "lowres", lowres);
    const GuidedStage stage = run_guided_stage(scene, &hi, pose, camera, lowres, float(c.tau),
                                               float(c.delta), gp, c.factor, !c.no_depth_aggregation);
    save_buffers(frame_dir / "hires", stage.buffers);
    atomic_write(frame_dir / "stats.json", stats_to_json(stage.stats).dump(2) + "\n");
  }
  write_run_json(fs::path(c.out) / "run.json", c);
  std::cout << "animated " << c.frames << " frame(s) -> " << c.out << "\n";
  return 0;
}

int dispatch(RunConfig& c) {
  if (c.subcommand == "bake") return cmd_bake(c);
  if (c.subcommand == "render") return cmd_render(c);
  if (c.subcommand == "superres") return cmd_superres(c);
  if (c.subcommand == "oracle") return cmd_oracle(c);
  if (c.subcommand == "metrics") return cmd_metrics(c);
  if (c.subcommand == "bench") return cmd_bench(c);
  if (c.subcommand == "animate") return cmd_animate(c);
  throw UsageError("unknown subcommand: " + c.subcommand);
}

void add_common_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--config", c.config_path, "JSON config supplying defaults for this run")
      ->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "frame seed");
  sub->add_option("--workers", c.workers, "worker threads (0 = all cores, default from SEMRAD_WORKERS)");
  sub->add_option("--beta", c.beta, "density sigmoid sharpness");
  sub->add_option("--density-sign", c.density_sign, "+1 paper-literal, -1 inside-dense")
      ->check(CLI::IsMember({-1, 1}));
  sub->add_option("--density-scale", c.density_scale, "density ceiling");
  sub->add_option("--background", c.background, "background color r g b")->expected(3);
  sub->add_option("--parts", c.parts, "comma list of parts to enable, or 'all'");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  RunConfig c;

  // Replay mode: the config file alone names the subcommand.
  try {
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config") {
        if (i + 1 >= args.size()) throw UsageError("--config needs a path");
        config_from_json(load_json_file(args[i + 1], "config"), c);
      }
    }
    if (!args.empty() && args[0] == "--config") {
      if (args.size() != 2) throw UsageError("replay mode takes no flags besides --config");
      return dispatch(c);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"semantic-part radiance renderer"};
  app.require_subcommand(1);

  CLI::App* bake = app.add_subcommand("bake", "bake a recipe into a scene pack");
  bake->add_option("--scene", c.scene, "recipe JSON");
  bake->add_option("--res", c.res, "tri-plane resolution (power of two)");
  bake->add_option("--out", c.out, "output pack path");
  add_common_options(bake, c);

  CLI::App* render = app.add_subcommand("render", "render low-res buffers from a pack");
  render->add_option("--pack", c.pack, "scene pack");
  render->add_option("--pose", c.pose, "pose JSON")->check(CLI::ExistingFile);
  render->add_option("--camera", c.camera, "camera JSON")->check(CLI::ExistingFile);
  render->add_option("--out", c.out, "output directory");
  render->add_option("--samples", c.samples, "coarse samples per ray");
  render->add_option("--fine", c.fine, "importance samples per ray");
  bool flag_no_jitter = false;
  render->add_flag("--no-jitter", flag_no_jitter, "midpoint sampling");
  render->add_flag("--no-normals", c.no_normals, "skip the normal buffer");
  add_common_options(render, c);

  CLI::App* superres = app.add_subcommand("superres", "guided 4x re-render from a low-res run");
  superres->add_option("--pack", c.pack, "scene pack");
  superres->add_option("--lowres", c.lowres, "low-res render directory");
  superres->add_option("--out", c.out, "output directory");
  superres->add_option("--tau", c.tau, "depth probe offset (scene units; <0 = span/72)");
  superres->add_option("--delta", c.delta, "semantic gate threshold");
  superres->add_option("--factor", c.factor, "upsampling factor (power of two)");
  superres->add_flag("--no-depth-aggregation", c.no_depth_aggregation,
                     "center-pixel candidates only (ablation)");
  superres->add_flag("--no-normals", c.no_normals, "skip the normal buffer");
  add_common_options(superres, c);

  CLI::App* oracle = app.add_subcommand("oracle", "dense reference render");
  oracle->add_option("--pack", c.pack, "scene pack");
  oracle->add_option("--pose", c.pose, "pose JSON")->check(CLI::ExistingFile);
  oracle->add_option("--camera", c.camera, "camera JSON")->check(CLI::ExistingFile);
  oracle->add_option("--out", c.out, "output directory");
  oracle->add_option("--coarse", c.oracle_coarse, "oracle coarse samples");
  oracle->add_option("--fine", c.oracle_fine, "oracle importance samples");
  oracle->add_flag("--hires", c.hires, "render on 4x-upsampled planes at 4x resolution");
  add_common_options(oracle, c);

  CLI::App* metrics = app.add_subcommand("metrics", "image metrics and disentanglement checks");
  metrics->add_option("--mode", c.mode, "compare | consistency | garment-check");
  metrics->add_option("--a", c.input_a, "first render directory");
  metrics->add_option("--b", c.input_b, "second render directory");
  metrics->add_option("--pack", c.pack, "scene pack (garment-check)");
  metrics->add_option("--part", c.part, "part name (garment-check)");
  metrics->add_option("--camera", c.camera, "camera JSON")->check(CLI::ExistingFile);
  metrics->add_option("--pose", c.pose, "pose JSON")->check(CLI::ExistingFile);
  metrics->add_option("--out", c.out, "report JSON path");
  add_common_options(metrics, c);

  CLI::App* bench = app.add_subcommand("bench", "wall-time and eval-count table");
  bench->add_option("--pack", c.pack, "scene pack");
  bench->add_option("--camera", c.camera, "camera JSON")->check(CLI::ExistingFile);
  bench->add_option("--pose", c.pose, "pose JSON")->check(CLI::ExistingFile);
  bench->add_option("--out", c.out, "output CSV path");
  bench->add_option("--workers-list", c.workers_list, "comma list of worker counts (0 = all)");
  bench->add_option("--tau", c.tau, "depth probe offset");
  bench->add_option("--delta", c.delta, "semantic gate threshold");
  bench->add_option("--factor", c.factor, "upsampling factor");
  add_common_options(bench, c);

  CLI::App* animate = app.add_subcommand("animate", "render a pose sequence or camera orbit");
  animate->add_option("--pack", c.pack, "scene pack");
  animate->add_option("--poses", c.poses, "pose sequence JSON")->check(CLI::ExistingFile);
  animate->add_option("--pose", c.pose, "single pose JSON")->check(CLI::ExistingFile);
  animate->add_option("--camera", c.camera, "camera JSON")->check(CLI::ExistingFile);
  animate->add_option("--frames", c.frames, "frame count");
  animate->add_flag("--orbit", c.orbit, "orbit the camera about the figure");
  animate->add_option("--out", c.out, "output directory");
  animate->add_option("--tau", c.tau, "depth probe offset");
  animate->add_option("--delta", c.delta, "semantic gate threshold");
  animate->add_option("--factor", c.factor, "upsampling factor");
  animate->add_flag("--no-depth-aggregation", c.no_depth_aggregation, "ablation");
  animate->add_flag("--no-normals", c.no_normals, "skip normal buffers");
  add_common_options(animate, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (flag_no_jitter) c.jitter = false;

  try {
    for (CLI::App* sub : app.get_subcommands()) {
      c.subcommand = sub->get_name();
      return dispatch(c);
    }
    throw UsageError("no subcommand given");
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace semrad::cli
