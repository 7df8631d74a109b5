// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dynscene/mesh.hpp"

namespace dynscene {

// Single determinant epsilon for the ray/triangle test, shared by the BVH
// path and any brute-force oracle so hit/miss agrees at silhouette pixels.
inline constexpr double kRayTriangleDetEpsilon = 1e-9;

struct RayHit {
  double t = 0.0;                    // distance along the (unit) ray, meters
  std::uint32_t triangle = 0;        // index into the source mesh
  std::array<double, 3> barycentric{};  // weights for the triangle's vertices
};

// Closed Moller-Trumbore intersection of a ray with one triangle.
// Boundary hits (barycentric coordinate exactly 0 or 1) count. Rays parallel
// to the triangle plane (|det| < kRayTriangleDetEpsilon) miss.
std::optional<RayHit> intersect_triangle(const Vec3& origin, const Vec3& dir,
                                         const Vec3& v0, const Vec3& v1,
                                         const Vec3& v2, double t_max);

// Binary BVH over mesh triangles: median split on the longest node axis,
// at most kLeafSize triangles per leaf. Immutable after construction;
// concurrent queries are safe.
class Bvh {
 public:
  static constexpr std::uint32_t kLeafSize = 4;

  struct Node {
    Aabb box;
    std::uint32_t left = 0;   // internal: child node indices
    std::uint32_t right = 0;
    std::uint32_t first = 0;  // leaf: range into order()
    std::uint32_t count = 0;  // 0 for internal nodes
    bool is_leaf() const { return count > 0; }
  };

  Bvh() = default;
  explicit Bvh(const TriangleMesh& mesh);  // throws EmptyMesh

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::uint32_t>& order() const { return order_; }
  const Aabb& bounds() const { return nodes_.front().box; }

 private:
  std::uint32_t build(const TriangleMesh& mesh, std::vector<Vec3>& centroids,
                      std::uint32_t first, std::uint32_t count);

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;  // permutation of mesh triangle indices
};

// Nearest hit with t in [0, t_max], or nullopt. Ties on t resolve to the
// lowest triangle index, which makes the result identical to a brute-force
// scan over all triangles using the same rule.
std::optional<RayHit> ray_cast(const TriangleMesh& mesh, const Bvh& bvh,
                               const Vec3& origin, const Vec3& dir, double t_max);

// Mesh plus its acceleration structure, built once and reused across queries.
struct PreparedMesh {
  TriangleMesh mesh;
  Bvh bvh;

  PreparedMesh() = default;
  explicit PreparedMesh(TriangleMesh m) : mesh(std::move(m)), bvh(mesh) {}
};

}  // namespace dynscene
