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

#include <stdexcept>
#include <string>

#include "semrad/vec.hpp"

namespace semrad {

// Pinhole camera. The orthonormal basis columns are right/up/back; the
// camera looks down -Z of its basis. Pixel-center directions span the
// image plane corner-to-corner: the center pixel of an odd resolution
// looks exactly along -Z and the edge-column center-row ray of a 90-degree
// fov sits exactly 45 degrees off the forward axis.
struct Camera {
  Vec3 position;
  Mat3 basis;
  float fov_y = 0.7853981633974483f;  // radians
  int width = 256;
  int height = 256;

  Vec3 forward() const { return -basis.cz; }

  void validate() const {
    if (!(fov_y > 0.0f && fov_y < kPi)) throw std::runtime_error("camera fov must be in (0, pi)");
    if (width <= 0 || height <= 0) throw std::runtime_error("camera resolution must be positive");
    const float tol = 1e-6f;
    if (std::abs(length(basis.cx) - 1.0f) > tol || std::abs(length(basis.cy) - 1.0f) > tol ||
        std::abs(length(basis.cz) - 1.0f) > tol || std::abs(dot(basis.cx, basis.cy)) > tol ||
        std::abs(dot(basis.cx, basis.cz)) > tol || std::abs(dot(basis.cy, basis.cz)) > tol)
      throw std::runtime_error("camera basis is not orthonormal");
  }
};

struct Ray {
  Vec3 origin;
  Vec3 dir;  // unit
  float t_near = 0.0f;
  float t_far = 1.0f;
  int px = 0, py = 0;
};

Camera make_lookat(const Vec3& position, const Vec3& target, const Vec3& up, float fov_y,
                   int width, int height);

// Deterministic pinhole ray through pixel (px, py); image y runs down.
inline Ray pixel_ray(const Camera& cam, int px, int py, float t_near, float t_far) {
  const float tan_y = std::tan(cam.fov_y * 0.5f);
  const float tan_x = tan_y * float(cam.width) / float(cam.height);
  const float u = cam.width > 1 ? 2.0f * float(px) / float(cam.width - 1) - 1.0f : 0.0f;
  const float v = cam.height > 1 ? 1.0f - 2.0f * float(py) / float(cam.height - 1) : 0.0f;
  const Vec3 d = cam.basis.cx * (u * tan_x) + cam.basis.cy * (v * tan_y) - cam.basis.cz;
  Ray r;
  r.origin = cam.position;
  r.dir = normalize(d);
  r.t_near = t_near;
  r.t_far = t_far;
  r.px = px;
  r.py = py;
  return r;
}

Camera load_camera(const std::string& path);

}  // namespace semrad
