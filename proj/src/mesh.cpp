// SPDX-License-Identifier: Apache-2.0
#include "dynscene/mesh.hpp"

namespace dynscene {

TriangleMesh transform_mesh(const TriangleMesh& mesh, const Transform& t) {
  TriangleMesh out;
  out.name = mesh.name;
  out.triangles = mesh.triangles;
  out.vertices.reserve(mesh.vertices.size());
  for (const Vec3& v : mesh.vertices) out.vertices.push_back(t.apply(v));
  return out;
}

TriangleMesh merge_meshes(const std::vector<const TriangleMesh*>& parts,
                          const std::string& name) {
  TriangleMesh out;
  out.name = name;
  for (const TriangleMesh* part : parts) {
    const std::uint32_t base = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), part->vertices.begin(), part->vertices.end());
    for (const auto& tri : part->triangles) {
      out.triangles.push_back({tri[0] + base, tri[1] + base, tri[2] + base});
    }
  }
  return out;
}

TriangleMesh make_box(const Vec3& center, const Vec3& size, const std::string& name) {
  TriangleMesh m;
  m.name = name;
  const Vec3 h = size * 0.5;
  for (int i = 0; i < 8; ++i) {
    m.vertices.push_back(center + Vec3{(i & 1) ? h.x : -h.x, (i & 2) ? h.y : -h.y,
                                       (i & 4) ? h.z : -h.z});
  }
  // Two triangles per face, outward winding.
  static const std::array<std::uint32_t, 3> faces[12] = {
      {0, 2, 1}, {1, 2, 3},  // z-
      {4, 5, 6}, {5, 7, 6},  // z+
      {0, 1, 4}, {1, 5, 4},  // y-
      {2, 6, 3}, {3, 6, 7},  // y+
      {0, 4, 2}, {2, 4, 6},  // x-
      {1, 3, 5}, {3, 7, 5},  // x+
  };
  m.triangles.assign(faces, faces + 12);
  return m;
}

TriangleMesh make_quad(const Vec3& c00, const Vec3& c10, const Vec3& c11,
                       const Vec3& c01, const std::string& name) {
  TriangleMesh m;
  m.name = name;
  m.vertices = {c00, c10, c11, c01};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

}  // namespace dynscene
