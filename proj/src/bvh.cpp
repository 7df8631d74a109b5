// SPDX-License-Identifier: Apache-2.0
#include "dynscene/bvh.hpp"

#include <algorithm>

#include "dynscene/error.hpp"

namespace dynscene {

std::optional<RayHit> intersect_triangle(const Vec3& origin, const Vec3& dir,
                                         const Vec3& v0, const Vec3& v1,
                                         const Vec3& v2, double t_max) {
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 pvec = cross(dir, e2);
  const double det = dot(e1, pvec);
  if (std::abs(det) < kRayTriangleDetEpsilon) return std::nullopt;
  const double inv_det = 1.0 / det;
  const Vec3 tvec = origin - v0;
  const double u = dot(tvec, pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return std::nullopt;
  const Vec3 qvec = cross(tvec, e1);
  const double v = dot(dir, qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return std::nullopt;
  const double t = dot(e2, qvec) * inv_det;
  if (t < 0.0 || t > t_max) return std::nullopt;
  RayHit hit;
  hit.t = t;
  hit.barycentric = {1.0 - u - v, u, v};
  return hit;
}

Bvh::Bvh(const TriangleMesh& mesh) {
  if (mesh.empty()) fail(Errc::empty_mesh, "cannot build a BVH over an empty mesh");
  const std::uint32_t n = static_cast<std::uint32_t>(mesh.triangles.size());
  order_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) order_[i] = i;
  std::vector<Vec3> centroids(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto tv = mesh.triangle_vertices(i);
    centroids[i] = (tv[0] + tv[1] + tv[2]) / 3.0;
  }
  nodes_.reserve(2 * n);
  build(mesh, centroids, 0, n);
}

std::uint32_t Bvh::build(const TriangleMesh& mesh, std::vector<Vec3>& centroids,
                         std::uint32_t first, std::uint32_t count) {
  const std::uint32_t index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb box;
  for (std::uint32_t i = first; i < first + count; ++i) {
    for (const Vec3& v : mesh.triangle_vertices(order_[i])) box.expand(v);
  }
  nodes_[index].box = box;
  if (count <= kLeafSize) {
    nodes_[index].first = first;
    nodes_[index].count = count;
    return index;
  }
  const Vec3 ext = box.extent();
  int axis = 0;
  if (ext.y > ext.x) axis = 1;
  if (ext.z > ext[axis]) axis = 2;
  const std::uint32_t mid = first + count / 2;
  std::nth_element(order_.begin() + first, order_.begin() + mid,
                   order_.begin() + first + count,
                   [&](std::uint32_t a, std::uint32_t b) {
                     if (centroids[a][axis] != centroids[b][axis])
                       return centroids[a][axis] < centroids[b][axis];
                     return a < b;  // total order keeps the build deterministic
                   });
  const std::uint32_t left = build(mesh, centroids, first, mid - first);
  const std::uint32_t right = build(mesh, centroids, mid, first + count - mid);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

namespace {

// Slab test against [0, t_limit]; closed at the box faces. Axes the ray is
// parallel to are handled by a containment check to avoid 0 * inf.
bool ray_hits_box(const Vec3& origin, const Vec3& dir, const Aabb& box,
                  double t_limit) {
  double t_near = 0.0;
  double t_far = t_limit;
  for (int axis = 0; axis < 3; ++axis) {
    const double d = dir[axis];
    const double o = origin[axis];
    if (std::abs(d) < 1e-300) {
      if (o < box.min[axis] || o > box.max[axis]) return false;
      continue;
    }
    const double inv = 1.0 / d;
    double t0 = (box.min[axis] - o) * inv;
    double t1 = (box.max[axis] - o) * inv;
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return false;
  }
  return true;
}

}  // namespace

std::optional<RayHit> ray_cast(const TriangleMesh& mesh, const Bvh& bvh,
                               const Vec3& origin, const Vec3& dir, double t_max) {
  std::optional<RayHit> best;
  std::uint32_t stack[64];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Bvh::Node& node = bvh.nodes()[stack[--top]];
    const double limit = best ? best->t : t_max;
    if (!ray_hits_box(origin, dir, node.box, limit)) continue;
    if (node.is_leaf()) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const std::uint32_t tri = bvh.order()[i];
        const auto tv = mesh.triangle_vertices(tri);
        auto hit = intersect_triangle(origin, dir, tv[0], tv[1], tv[2], t_max);
        if (!hit) continue;
        hit->triangle = tri;
        if (!best || hit->t < best->t ||
            (hit->t == best->t && hit->triangle < best->triangle)) {
          best = hit;
        }
      }
    } else {
      stack[top++] = node.left;
      stack[top++] = node.right;
    }
  }
  return best;
}

}  // namespace dynscene
