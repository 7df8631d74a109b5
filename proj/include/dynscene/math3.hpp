// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dynscene {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
inline Vec3 operator*(double s, const Vec3& a) { return a * s; }
inline Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, const Vec3& b) { a = a - b; return a; }
inline bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return n > 0.0 ? a / n : Vec3{};
}
inline Vec3 cwise_min(const Vec3& a, const Vec3& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline Vec3 cwise_max(const Vec3& a, const Vec3& b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

// Unit quaternion, scalar-first. Represents a rotation mapping local
// coordinates to parent coordinates via rotate().
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

  Quat normalized() const {
    double n = norm();
    return {w / n, x / n, y / n, z / n};
  }

  Quat conjugate() const { return {w, -x, -y, -z}; }

  Vec3 rotate(const Vec3& v) const {
    const Vec3 u{x, y, z};
    const Vec3 t = cross(u, v) * 2.0;
    return v + t * w + cross(u, t);
  }

  static Quat from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 a = dynscene::normalized(axis);
    const double h = 0.5 * angle;
    const double s = std::sin(h);
    return {std::cos(h), a.x * s, a.y * s, a.z * s};
  }

  static Quat from_yaw(double yaw) { return from_axis_angle({0, 0, 1}, yaw); }
};

inline Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
inline bool operator==(const Quat& a, const Quat& b) {
  return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
}

// Rotation vector (axis * angle) of a unit quaternion; angle in [0, pi].
inline Vec3 rotation_vector(const Quat& q) {
  Vec3 v{q.x, q.y, q.z};
  double s = norm(v);
  double w = q.w;
  if (w < 0.0) {  // same rotation, shorter representation
    w = -w;
    v = -v;
  }
  if (s < 1e-12) return v * 2.0;  // small-angle limit of 2*atan2(s,w)*v/s
  double angle = 2.0 * std::atan2(s, w);
  return v * (angle / s);
}

inline Quat slerp(const Quat& a, const Quat& b, double u) {
  if (u <= 0.0) return a;
  if (u >= 1.0) return b;
  double d = a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
  Quat bb = b;
  if (d < 0.0) {
    d = -d;
    bb = {-b.w, -b.x, -b.y, -b.z};
  }
  if (d > 1.0 - 1e-10) {  // nearly parallel: nlerp
    Quat r{a.w + (bb.w - a.w) * u, a.x + (bb.x - a.x) * u,
           a.y + (bb.y - a.y) * u, a.z + (bb.z - a.z) * u};
    return r.normalized();
  }
  const double theta = std::acos(std::clamp(d, -1.0, 1.0));
  const double s = std::sin(theta);
  const double wa = std::sin((1.0 - u) * theta) / s;
  const double wb = std::sin(u * theta) / s;
  return {wa * a.w + wb * bb.w, wa * a.x + wb * bb.x, wa * a.y + wb * bb.y,
          wa * a.z + wb * bb.z};
}

// Build a quaternion from an orthonormal basis given as columns.
Quat quat_from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

// Rigid pose plus uniform scale. apply() maps local points to world.
struct Transform {
  Quat rotation;
  Vec3 translation;
  double scale = 1.0;

  Vec3 apply(const Vec3& p) const { return rotation.rotate(p * scale) + translation; }

  // this ∘ other: apply `other` first, then this.
  Transform compose(const Transform& other) const {
    Transform r;
    r.scale = scale * other.scale;
    r.rotation = rotation * other.rotation;
    r.translation = rotation.rotate(other.translation * scale) + translation;
    return r;
  }

  static Transform identity() { return {}; }
};

struct Aabb {
  Vec3 min{std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity()};
  Vec3 max{-std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity()};

  bool empty() const { return min.x > max.x || min.y > max.y || min.z > max.z; }
  Vec3 center() const { return (min + max) * 0.5; }
  Vec3 extent() const { return max - min; }

  void expand(const Vec3& p) {
    min = cwise_min(min, p);
    max = cwise_max(max, p);
  }
  void expand(const Aabb& b) {
    min = cwise_min(min, b.min);
    max = cwise_max(max, b.max);
  }

  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
  bool contains(const Aabb& b) const {
    return contains(b.min) && contains(b.max);
  }

  // Closed test: shared boundary counts as overlap.
  bool overlaps(const Aabb& b) const {
    return min.x <= b.max.x && b.min.x <= max.x && min.y <= b.max.y &&
           b.min.y <= max.y && min.z <= b.max.z && b.min.z <= max.z;
  }

  Aabb transformed(const Transform& t) const {
    Aabb out;
    for (int i = 0; i < 8; ++i) {
      Vec3 c{(i & 1) ? max.x : min.x, (i & 2) ? max.y : min.y,
             (i & 4) ? max.z : min.z};
      out.expand(t.apply(c));
    }
    return out;
  }
};

}  // namespace dynscene
