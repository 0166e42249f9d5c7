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

#include "semrad/camera.hpp"

#include <fstream>

#include <json.hpp>

namespace semrad {

Camera make_lookat(const Vec3& position, const Vec3& target, const Vec3& up, float fov_y,
                   int width, int height) {
  Camera cam;
  cam.position = position;
  cam.fov_y = fov_y;
  cam.width = width;
  cam.height = height;
  const Vec3 back = normalize(position - target);
  Vec3 right = cross(up, back);
  const float rl = length(right);
  if (rl < 1e-8f) throw std::runtime_error("camera up is parallel to the view direction");
  right = right / rl;
  cam.basis.cx = right;
  cam.basis.cy = cross(back, right);
  cam.basis.cz = back;
  cam.validate();
  return cam;
}

Camera load_camera(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open camera file: " + path);
  nlohmann::json j;
  in >> j;
  auto vec = [](const nlohmann::json& a) { return Vec3{a[0].get<float>(), a[1].get<float>(), a[2].get<float>()}; };
  const Vec3 position = vec(j.at("position"));
  const Vec3 target = vec(j.at("look_at"));
  const Vec3 up = j.contains("up") ? vec(j["up"]) : Vec3{0, 1, 0};
  const float fov_deg = j.value("fov_deg", 45.0f);
  const int resolution = j.value("resolution", 256);
  return make_lookat(position, target, up, fov_deg * kPi / 180.0f, resolution, resolution);
}

}  // namespace semrad
