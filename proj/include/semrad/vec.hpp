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
#include <algorithm>
#include <array>

namespace semrad {

struct Vec3 {
  float x = 0.0f, y = 0.0f, z = 0.0f;

  Vec3() = default;
  Vec3(float x_, float y_, float z_) : x(x_), y(y_), z(z_) {}

  float& operator[](int i) { return (&x)[i]; }
  float operator[](int i) const { return (&x)[i]; }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(const Vec3& a, float s) { return {a.x * s, a.y * s, a.z * s}; }
inline Vec3 operator*(float s, const Vec3& a) { return a * s; }
inline Vec3 operator*(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }
inline Vec3 operator/(const Vec3& a, float s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, const Vec3& b) { a = a - b; return a; }
inline Vec3& operator*=(Vec3& a, float s) { a = a * s; return a; }

inline float dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline float length_squared(const Vec3& a) { return dot(a, a); }
inline float length(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalize(const Vec3& a) { return a / length(a); }
inline Vec3 min(const Vec3& a, const Vec3& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 max(const Vec3& a, const Vec3& b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}
inline Vec3 clamp01(const Vec3& a) {
  return {std::clamp(a.x, 0.0f, 1.0f), std::clamp(a.y, 0.0f, 1.0f), std::clamp(a.z, 0.0f, 1.0f)};
}
inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

// Column-major 3x3 rotation matrix.
struct Mat3 {
  // columns
  Vec3 cx{1, 0, 0}, cy{0, 1, 0}, cz{0, 0, 1};

  static Mat3 identity() { return {}; }

  // Rodrigues rotation from an axis-angle vector (angle = |v|, radians).
  static Mat3 from_axis_angle(const Vec3& v) {
    const float angle = length(v);
    if (angle < 1e-12f) return identity();
    const Vec3 u = v / angle;
    const float c = std::cos(angle), s = std::sin(angle), t = 1.0f - c;
    Mat3 m;
    m.cx = {c + t * u.x * u.x, t * u.x * u.y + s * u.z, t * u.x * u.z - s * u.y};
    m.cy = {t * u.x * u.y - s * u.z, c + t * u.y * u.y, t * u.y * u.z + s * u.x};
    m.cz = {t * u.x * u.z + s * u.y, t * u.y * u.z - s * u.x, c + t * u.z * u.z};
    return m;
  }
};

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
  return m.cx * v.x + m.cy * v.y + m.cz * v.z;
}
inline Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 m;
  m.cx = a * b.cx;
  m.cy = a * b.cy;
  m.cz = a * b.cz;
  return m;
}
inline Mat3 transpose(const Mat3& m) {
  Mat3 t;
  t.cx = {m.cx.x, m.cy.x, m.cz.x};
  t.cy = {m.cx.y, m.cy.y, m.cz.y};
  t.cz = {m.cx.z, m.cy.z, m.cz.z};
  return t;
}
inline float determinant(const Mat3& m) { return dot(m.cx, cross(m.cy, m.cz)); }

// Rigid transform x -> R*x + t. Inverse applies R^T*(x - t).
struct Rigid {
  Mat3 rotation;
  Vec3 translation;

  static Rigid identity() { return {Mat3::identity(), Vec3{}}; }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 apply_inverse(const Vec3& p) const { return transpose(rotation) * (p - translation); }

  Rigid then(const Rigid& outer) const {
    // outer(inner(x))
    return {outer.rotation * rotation, outer.rotation * translation + outer.translation};
  }
};

struct Aabb {
  Vec3 lo{-1, -1, -1};
  Vec3 hi{1, 1, 1};

  bool contains(const Vec3& p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
  }
  bool contains(const Aabb& other) const {
    return contains(other.lo) && contains(other.hi);
  }
  Vec3 extent() const { return hi - lo; }

  // Euclidean distance from p to the box (0 inside).
  float distance(const Vec3& p) const {
    const Vec3 d = max(max(lo - p, Vec3{}), p - hi);
    return length(d);
  }
};

// Numerically stable logistic sigmoid.
inline float logistic(float z) {
  if (z >= 0.0f) return 1.0f / (1.0f + std::exp(-z));
  const float e = std::exp(z);
  return e / (1.0f + e);
}

constexpr float kPi = 3.14159265358979323846f;

}  // namespace semrad
