// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dynscene/bvh.hpp"
#include "dynscene/math3.hpp"
#include "dynscene/mesh.hpp"

namespace dynscene {

// Closed triangle-triangle intersection: boundary contact (shared vertex,
// edge, or coplanar touch) counts as intersecting. Interval test on the
// plane-plane line, with a coplanar 2D separating-axis fallback.
// Inputs must be non-degenerate.
bool tri_tri_intersect(const Vec3& a0, const Vec3& a1, const Vec3& a2,
                       const Vec3& b0, const Vec3& b1, const Vec3& b2);

// Closed triangle vs axis-aligned box (separating axis test, 13 axes).
bool tri_box_overlap(const Vec3& box_center, const Vec3& box_half,
                     const Vec3& v0, const Vec3& v1, const Vec3& v2);

// True iff any transformed triangle of a intersects any transformed triangle
// of b (closed test). BVH-vs-BVH descent over world-space node bounds.
bool meshes_collide(const PreparedMesh& a, const Transform& ta,
                    const PreparedMesh& b, const Transform& tb);

// Convenience overload; builds both BVHs on the fly. Throws EmptyMesh.
bool meshes_collide(const TriangleMesh& a, const Transform& ta,
                    const TriangleMesh& b, const Transform& tb);

}  // namespace dynscene
