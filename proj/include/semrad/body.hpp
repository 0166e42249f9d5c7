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

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "semrad/vec.hpp"

namespace semrad {

struct Capsule {
  Vec3 a, b;
  float radius = 0.0f;
};

// Exact signed distance to a capsule: negative inside, positive outside.
inline float capsule_sdf(const Capsule& c, const Vec3& p) {
  const Vec3 ab = c.b - c.a;
  const Vec3 ap = p - c.a;
  const float denom = dot(ab, ab);
  const float t = denom > 0.0f ? std::clamp(dot(ap, ab) / denom, 0.0f, 1.0f) : 0.0f;
  return length(ap - ab * t) - c.radius;
}

// Quadratic polynomial smooth minimum (blend radius k). Equals min(a, b)
// when k = 0 or when |a - b| >= k.
inline float smooth_min(float a, float b, float k) {
  if (k <= 0.0f) return std::min(a, b);
  const float h = std::max(k - std::abs(a - b), 0.0f) / k;
  return std::min(a, b) - h * h * k * 0.25f;
}

// Canonical body SDF: soft-min union of capsules. With smoothing = 0 this
// is the exact union, which is 1-Lipschitz; the quadratic blend can deepen
// values by at most smoothing/4 per pairwise fold, so the Lipschitz bound
// is 1 + eps with eps <= smoothing / (4 * min pair separation) in the
// blend regions. Tests pin the smoothing = 0 case.
struct BodyPrior {
  std::vector<Capsule> bones;
  float smoothing = 0.0f;

  float sdf(const Vec3& p) const {
    float d = std::numeric_limits<float>::max();
    for (const Capsule& c : bones) d = smooth_min(d, capsule_sdf(c, p), smoothing);
    return d;
  }

  int nearest_bone(const Vec3& p) const {
    int best = 0;
    float best_d = std::numeric_limits<float>::max();
    for (size_t i = 0; i < bones.size(); ++i) {
      const float d = capsule_sdf(bones[i], p);
      if (d < best_d) {
        best_d = d;
        best = int(i);
      }
    }
    return best;
  }
};

// One articulated bone: its capsule doubles as the skinning influence
// region, and the capsule's first endpoint is the joint pivot.
struct Bone {
  std::string name;
  int parent = -1;  // -1 = root
  Capsule capsule;
};

struct Skeleton {
  std::vector<Bone> bones;

  int find(const std::string& name) const {
    for (size_t i = 0; i < bones.size(); ++i)
      if (bones[i].name == name) return int(i);
    return -1;
  }
};

// Per-bone axis-angle rotations about each bone's joint; identity when a
// bone is absent from the map.
struct Pose {
  std::map<std::string, Vec3> rotations;

  bool is_identity() const { return rotations.empty(); }
};

// Rest-to-posed rigid transform per bone, composed down the hierarchy:
// each bone rotates about its own joint within its parent's frame.
// All-identity rotations give identity transforms, so canonical == posed
// at rest. Throws if the pose names a bone the skeleton lacks.
std::vector<Rigid> pose_transforms(const Skeleton& skeleton, const Pose& pose);

// Hard nearest-bone linear blend skinning, precomputed for one pose.
// Forward maps canonical points to posed space by the nearest rest
// capsule's transform; the inverse picks the nearest *posed* capsule and
// applies that bone's inverse, which makes the pair exactly invertible
// away from influence boundaries.
struct Deformer {
  std::vector<Rigid> transforms;     // rest -> posed, one per bone
  std::vector<Capsule> rest;         // skeleton capsules
  std::vector<Capsule> posed;        // capsules under the transforms

  Vec3 to_posed(const Vec3& x_canonical) const {
    return transforms[nearest(rest, x_canonical)].apply(x_canonical);
  }
  Vec3 to_canonical(const Vec3& x_posed) const {
    return transforms[nearest(posed, x_posed)].apply_inverse(x_posed);
  }
  int nearest_posed_bone(const Vec3& x_posed) const { return nearest(posed, x_posed); }

 private:
  static int nearest(const std::vector<Capsule>& capsules, const Vec3& p) {
    int best = 0;
    float best_d = std::numeric_limits<float>::max();
    for (size_t i = 0; i < capsules.size(); ++i) {
      const float d = capsule_sdf(capsules[i], p);
      if (d < best_d) {
        best_d = d;
        best = int(i);
      }
    }
    return best;
  }
};

Deformer make_deformer(const Skeleton& skeleton, const Pose& pose);

}  // namespace semrad
