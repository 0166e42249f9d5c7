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

#include "semrad/body.hpp"

namespace semrad {

std::vector<Rigid> pose_transforms(const Skeleton& skeleton, const Pose& pose) {
  for (const auto& [name, _] : pose.rotations)
    if (skeleton.find(name) < 0) throw std::runtime_error("pose names unknown bone: " + name);

  std::vector<Rigid> out(skeleton.bones.size(), Rigid::identity());
  for (size_t i = 0; i < skeleton.bones.size(); ++i) {
    const Bone& bone = skeleton.bones[i];
    if (bone.parent >= int(i)) throw std::runtime_error("skeleton bones must be parent-before-child");

    Rigid local = Rigid::identity();
    const auto it = pose.rotations.find(bone.name);
    if (it != pose.rotations.end()) {
      // rotate about the bone's joint (first capsule endpoint)
      const Mat3 r = Mat3::from_axis_angle(it->second);
      const Vec3 j = bone.capsule.a;
      local = {r, j - r * j};
    }
    out[i] = bone.parent < 0 ? local : local.then(out[bone.parent]);
  }
  return out;
}

Deformer make_deformer(const Skeleton& skeleton, const Pose& pose) {
  Deformer d;
  d.transforms = pose_transforms(skeleton, pose);
  d.rest.reserve(skeleton.bones.size());
  d.posed.reserve(skeleton.bones.size());
  for (size_t i = 0; i < skeleton.bones.size(); ++i) {
    const Capsule& c = skeleton.bones[i].capsule;
    d.rest.push_back(c);
    d.posed.push_back({d.transforms[i].apply(c.a), d.transforms[i].apply(c.b), c.radius});
  }
  return d;
}

}  // namespace semrad
