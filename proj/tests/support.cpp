// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include <cmath>

#include "dynscene/collide.hpp"

namespace dynscene::testsupport {

Vec3 random_unit_vector(Rng& rng) {
  for (;;) {
    Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    double n2 = norm2(v);
    if (n2 > 1e-6 && n2 <= 1.0) return v / std::sqrt(n2);
  }
}

Quat random_rotation(Rng& rng) {
  // Shoemake's uniform quaternion sampling.
  const double u1 = rng.unit();
  const double u2 = rng.unit();
  const double u3 = rng.unit();
  const double two_pi = 6.283185307179586477;
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  return Quat{a * std::sin(two_pi * u2), a * std::cos(two_pi * u2),
              b * std::sin(two_pi * u3), b * std::cos(two_pi * u3)}
      .normalized();
}

TriangleMesh random_mesh(Rng& rng, std::size_t triangle_count, double lo, double hi) {
  TriangleMesh m;
  m.name = "random";
  while (m.triangles.size() < triangle_count) {
    Vec3 a{rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
    Vec3 b = a + random_unit_vector(rng) * rng.uniform(0.05, 0.6);
    Vec3 c = a + random_unit_vector(rng) * rng.uniform(0.05, 0.6);
    if (norm(cross(b - a, c - a)) < 1e-4) continue;
    const std::uint32_t base = static_cast<std::uint32_t>(m.vertices.size());
    m.vertices.push_back(a);
    m.vertices.push_back(b);
    m.vertices.push_back(c);
    m.triangles.push_back({base, base + 1, base + 2});
  }
  return m;
}

std::optional<RayHit> ray_cast_brute_force(const TriangleMesh& mesh,
                                           const Vec3& origin, const Vec3& dir,
                                           double t_max) {
  std::optional<RayHit> best;
  for (std::uint32_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto tv = mesh.triangle_vertices(i);
    auto hit = intersect_triangle(origin, dir, tv[0], tv[1], tv[2], t_max);
    if (!hit) continue;
    hit->triangle = i;
    if (!best || hit->t < best->t || (hit->t == best->t && i < best->triangle)) {
      best = hit;
    }
  }
  return best;
}

bool meshes_collide_brute_force(const TriangleMesh& a, const Transform& ta,
                                const TriangleMesh& b, const Transform& tb) {
  for (std::size_t i = 0; i < a.triangles.size(); ++i) {
    const auto va = a.triangle_vertices(i);
    const Vec3 a0 = ta.apply(va[0]);
    const Vec3 a1 = ta.apply(va[1]);
    const Vec3 a2 = ta.apply(va[2]);
    for (std::size_t j = 0; j < b.triangles.size(); ++j) {
      const auto vb = b.triangle_vertices(j);
      if (tri_tri_intersect(a0, a1, a2, tb.apply(vb[0]), tb.apply(vb[1]),
                            tb.apply(vb[2]))) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace dynscene::testsupport
