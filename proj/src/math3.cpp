// SPDX-License-Identifier: Apache-2.0
#include "dynscene/math3.hpp"

namespace dynscene {

Quat quat_from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  // Shepperd's method over the rotation matrix with columns c0,c1,c2.
  const double m00 = c0.x, m01 = c1.x, m02 = c2.x;
  const double m10 = c0.y, m11 = c1.y, m12 = c2.y;
  const double m20 = c0.z, m21 = c1.z, m22 = c2.z;
  const double trace = m00 + m11 + m22;
  Quat q;
  if (trace > 0.0) {
    double s = std::sqrt(trace + 1.0) * 2.0;
    q.w = 0.25 * s;
    q.x = (m21 - m12) / s;
    q.y = (m02 - m20) / s;
    q.z = (m10 - m01) / s;
  } else if (m00 > m11 && m00 > m22) {
    double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
    q.w = (m21 - m12) / s;
    q.x = 0.25 * s;
    q.y = (m01 + m10) / s;
    q.z = (m02 + m20) / s;
  } else if (m11 > m22) {
    double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
    q.w = (m02 - m20) / s;
    q.x = (m01 + m10) / s;
    q.y = 0.25 * s;
    q.z = (m12 + m21) / s;
  } else {
    double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
    q.w = (m10 - m01) / s;
    q.x = (m02 + m20) / s;
    q.y = (m12 + m21) / s;
    q.z = 0.25 * s;
  }
  return q.normalized();
}

}  // namespace dynscene
