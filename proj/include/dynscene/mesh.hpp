// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dynscene/math3.hpp"

namespace dynscene {

// Indexed triangle soup. Immutable once built; concurrent read-only queries
// are safe. Degenerate triangles are dropped at parse time, so downstream
// code may assume every triangle has three distinct vertex positions.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::string name;
  std::size_t dropped_degenerate = 0;  // parse-time warning count

  bool empty() const { return triangles.empty(); }

  Aabb bounds() const {
    Aabb b;
    for (const Vec3& v : vertices) b.expand(v);
    return b;
  }

  std::array<Vec3, 3> triangle_vertices(std::size_t t) const {
    const auto& tri = triangles[t];
    return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
  }
};

TriangleMesh transform_mesh(const TriangleMesh& mesh, const Transform& t);

// Concatenates meshes; vertex indices are rebased, nothing is welded.
TriangleMesh merge_meshes(const std::vector<const TriangleMesh*>& parts,
                          const std::string& name = "merged");

// Axis-aligned box of given size centered at `center`, 12 triangles,
// outward-facing winding.
TriangleMesh make_box(const Vec3& center, const Vec3& size,
                      const std::string& name = "box");

// Two triangles spanning the rectangle with corners c00..c11.
TriangleMesh make_quad(const Vec3& c00, const Vec3& c10, const Vec3& c11,
                       const Vec3& c01, const std::string& name = "quad");

}  // namespace dynscene
