// SPDX-License-Identifier: Apache-2.0
#include "dynscene/collide.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dynscene/error.hpp"

namespace dynscene {
namespace {

// Plane-distance values within this relative tolerance of zero are treated
// as exactly on-plane, which routes exact touching configurations (shared
// cube faces and the like) into the coplanar branch.
constexpr double kCoplanarSnap = 1e-12;

struct PlaneSides {
  double d[3];
  bool all_positive() const { return d[0] > 0 && d[1] > 0 && d[2] > 0; }
  bool all_negative() const { return d[0] < 0 && d[1] < 0 && d[2] < 0; }
  bool all_zero() const { return d[0] == 0 && d[1] == 0 && d[2] == 0; }
};

PlaneSides side_of_plane(const Vec3& normal, const Vec3& plane_point,
                         const Vec3& t0, const Vec3& t1, const Vec3& t2) {
  PlaneSides s{{dot(normal, t0 - plane_point), dot(normal, t1 - plane_point),
                dot(normal, t2 - plane_point)}};
  double scale = norm(normal) * std::max({norm(t0 - plane_point), norm(t1 - plane_point),
                                          norm(t2 - plane_point), 1e-30});
  const double eps = kCoplanarSnap * scale;
  for (double& v : s.d) {
    if (std::abs(v) <= eps) v = 0.0;
  }
  return s;
}

// Interval a triangle cuts on the plane-plane intersection line, measured by
// projecting onto coordinate `axis`. `proj` are the vertex projections and
// `s` the (snapped) signed plane distances; not all of one strict sign.
void line_interval(const double proj[3], const PlaneSides& s, double& lo, double& hi) {
  double pts[4];
  int n = 0;
  static const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const auto& pr : pairs) {
    const double di = s.d[pr[0]], dj = s.d[pr[1]];
    if (di * dj < 0.0) {
      const double f = di / (di - dj);
      pts[n++] = proj[pr[0]] + f * (proj[pr[1]] - proj[pr[0]]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    if (s.d[i] == 0.0) pts[n++] = proj[i];
  }
  lo = pts[0];
  hi = pts[0];
  for (int i = 1; i < n; ++i) {
    lo = std::min(lo, pts[i]);
    hi = std::max(hi, pts[i]);
  }
}

struct P2 {
  double x, y;
};

// Closed 2D triangle overlap via separating axes (the 6 edge normals).
bool tri_tri_overlap_2d(const P2 a[3], const P2 b[3]) {
  const P2* tris[2] = {a, b};
  for (const P2* tri : tris) {
    for (int i = 0; i < 3; ++i) {
      const P2& p = tri[i];
      const P2& q = tri[(i + 1) % 3];
      const double ax = -(q.y - p.y);
      const double ay = q.x - p.x;
      double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
      for (int k = 0; k < 3; ++k) {
        const double pa = ax * a[k].x + ay * a[k].y;
        const double pb = ax * b[k].x + ay * b[k].y;
        amin = std::min(amin, pa);
        amax = std::max(amax, pa);
        bmin = std::min(bmin, pb);
        bmax = std::max(bmax, pb);
      }
      if (amax < bmin || bmax < amin) return false;  // strict gap only
    }
  }
  return true;
}

int dominant_axis(const Vec3& v) {
  const double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
  if (ax >= ay && ax >= az) return 0;
  return ay >= az ? 1 : 2;
}

bool coplanar_tri_tri(const Vec3& n, const Vec3& a0, const Vec3& a1, const Vec3& a2,
                      const Vec3& b0, const Vec3& b1, const Vec3& b2) {
  const int drop = dominant_axis(n);
  const int u = (drop + 1) % 3;
  const int v = (drop + 2) % 3;
  const P2 a[3] = {{a0[u], a0[v]}, {a1[u], a1[v]}, {a2[u], a2[v]}};
  const P2 b[3] = {{b0[u], b0[v]}, {b1[u], b1[v]}, {b2[u], b2[v]}};
  return tri_tri_overlap_2d(a, b);
}

}  // namespace

bool tri_tri_intersect(const Vec3& a0, const Vec3& a1, const Vec3& a2,
                       const Vec3& b0, const Vec3& b1, const Vec3& b2) {
  const Vec3 nb = cross(b1 - b0, b2 - b0);
  const PlaneSides sa = side_of_plane(nb, b0, a0, a1, a2);
  if (sa.all_positive() || sa.all_negative()) return false;

  const Vec3 na = cross(a1 - a0, a2 - a0);
  const PlaneSides sb = side_of_plane(na, a0, b0, b1, b2);
  if (sb.all_positive() || sb.all_negative()) return false;

  if (sa.all_zero() || sb.all_zero()) {
    return coplanar_tri_tri(nb, a0, a1, a2, b0, b1, b2);
  }

  const Vec3 line_dir = cross(na, nb);
  const int axis = dominant_axis(line_dir);
  const double pa[3] = {a0[axis], a1[axis], a2[axis]};
  const double pb[3] = {b0[axis], b1[axis], b2[axis]};
  double alo, ahi, blo, bhi;
  line_interval(pa, sa, alo, ahi);
  line_interval(pb, sb, blo, bhi);
  return std::max(alo, blo) <= std::min(ahi, bhi);
}

bool tri_box_overlap(const Vec3& box_center, const Vec3& box_half,
                     const Vec3& v0, const Vec3& v1, const Vec3& v2) {
  const Vec3 p0 = v0 - box_center;
  const Vec3 p1 = v1 - box_center;
  const Vec3 p2 = v2 - box_center;

  for (int axis = 0; axis < 3; ++axis) {
    const double lo = std::min({p0[axis], p1[axis], p2[axis]});
    const double hi = std::max({p0[axis], p1[axis], p2[axis]});
    if (lo > box_half[axis] || hi < -box_half[axis]) return false;
  }

  const Vec3 edges[3] = {p1 - p0, p2 - p1, p0 - p2};
  for (const Vec3& e : edges) {
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 unit{};
      unit[axis] = 1.0;
      const Vec3 a = cross(unit, e);
      const double r = box_half.x * std::abs(a.x) + box_half.y * std::abs(a.y) +
                       box_half.z * std::abs(a.z);
      const double q0 = dot(a, p0);
      const double q1 = dot(a, p1);
      const double q2 = dot(a, p2);
      if (std::min({q0, q1, q2}) > r || std::max({q0, q1, q2}) < -r) return false;
    }
  }

  const Vec3 n = cross(edges[0], p2 - p0);
  const double r = box_half.x * std::abs(n.x) + box_half.y * std::abs(n.y) +
                   box_half.z * std::abs(n.z);
  return std::abs(dot(n, p0)) <= r;
}

namespace {

bool leaf_pair_collides(const PreparedMesh& a, const Transform& ta,
                        const PreparedMesh& b, const Transform& tb,
                        const Bvh::Node& na, const Bvh::Node& nb) {
  for (std::uint32_t i = na.first; i < na.first + na.count; ++i) {
    const auto va = a.mesh.triangle_vertices(a.bvh.order()[i]);
    const Vec3 wa0 = ta.apply(va[0]);
    const Vec3 wa1 = ta.apply(va[1]);
    const Vec3 wa2 = ta.apply(va[2]);
    for (std::uint32_t j = nb.first; j < nb.first + nb.count; ++j) {
      const auto vb = b.mesh.triangle_vertices(b.bvh.order()[j]);
      if (tri_tri_intersect(wa0, wa1, wa2, tb.apply(vb[0]), tb.apply(vb[1]),
                            tb.apply(vb[2]))) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

bool meshes_collide(const PreparedMesh& a, const Transform& ta,
                    const PreparedMesh& b, const Transform& tb) {
  struct Pair {
    std::uint32_t na, nb;
  };
  std::vector<Pair> stack;
  stack.push_back({0, 0});
  while (!stack.empty()) {
    const Pair p = stack.back();
    stack.pop_back();
    const Bvh::Node& na = a.bvh.nodes()[p.na];
    const Bvh::Node& nb = b.bvh.nodes()[p.nb];
    const Aabb wa = na.box.transformed(ta);
    const Aabb wb = nb.box.transformed(tb);
    if (!wa.overlaps(wb)) continue;
    if (na.is_leaf() && nb.is_leaf()) {
      if (leaf_pair_collides(a, ta, b, tb, na, nb)) return true;
      continue;
    }
    // Split the node with the larger world extent; ties split a.
    const Vec3 ea = wa.extent();
    const Vec3 eb = wb.extent();
    const double size_a = ea.x + ea.y + ea.z;
    const double size_b = eb.x + eb.y + eb.z;
    const bool split_a = !na.is_leaf() && (nb.is_leaf() || size_a >= size_b);
    if (split_a) {
      stack.push_back({na.left, p.nb});
      stack.push_back({na.right, p.nb});
    } else {
      stack.push_back({p.na, nb.left});
      stack.push_back({p.na, nb.right});
    }
  }
  return false;
}

bool meshes_collide(const TriangleMesh& a, const Transform& ta,
                    const TriangleMesh& b, const Transform& tb) {
  if (a.empty() || b.empty()) {
    fail(Errc::empty_mesh, "meshes_collide requires non-empty meshes");
  }
  return meshes_collide(PreparedMesh(a), ta, PreparedMesh(b), tb);
}

}  // namespace dynscene
