// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "dynscene/bvh.hpp"
#include "dynscene/mesh.hpp"
#include "dynscene/rng.hpp"

namespace dynscene::testsupport {

// Random triangle soup inside [lo, hi]^3. Triangles with tiny area are
// regenerated so the collision predicates see well-formed input.
TriangleMesh random_mesh(Rng& rng, std::size_t triangle_count, double lo, double hi);

// Oracle: nearest hit by scanning every triangle with the same closed
// triangle test and the same tie rule (lower index wins) the BVH path uses.
std::optional<RayHit> ray_cast_brute_force(const TriangleMesh& mesh,
                                           const Vec3& origin, const Vec3& dir,
                                           double t_max);

// Oracle: all-pairs triangle-triangle test on transformed meshes.
bool meshes_collide_brute_force(const TriangleMesh& a, const Transform& ta,
                                const TriangleMesh& b, const Transform& tb);

Vec3 random_unit_vector(Rng& rng);
Quat random_rotation(Rng& rng);

}  // namespace dynscene::testsupport
