// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <set>

#include "dynscene/collide.hpp"
#include "dynscene/error.hpp"
#include "dynscene/stl_io.hpp"
#include "support.hpp"

using namespace dynscene;
namespace ts = dynscene::testsupport;

namespace {

std::string binary_stl_one_triangle() {
  std::string bytes(80, '\0');
  auto push_u32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  };
  auto push_f32 = [&](float f) {
    std::uint32_t v;
    std::memcpy(&v, &f, 4);
    push_u32(v);
  };
  push_u32(1);
  push_f32(0);
  push_f32(0);
  push_f32(1);  // normal
  const float verts[9] = {0, 0, 0, 1, 0, 0, 0, 1, 0};
  for (float f : verts) push_f32(f);
  bytes.push_back('\0');
  bytes.push_back('\0');
  return bytes;
}

}  // namespace

TEST_CASE("parse_stl: binary single triangle") {
  TriangleMesh m = parse_stl(binary_stl_one_triangle());
  CHECK(m.vertices.size() == 3);
  CHECK(m.triangles.size() == 1);
  CHECK(m.vertices[0] == Vec3{0, 0, 0});
  CHECK(m.vertices[1] == Vec3{1, 0, 0});
  CHECK(m.vertices[2] == Vec3{0, 1, 0});
}

TEST_CASE("parse_stl: ASCII facet equals its binary encoding") {
  const char* ascii =
      "solid a\n"
      "  facet normal 0 0 1\n"
      "    outer loop\n"
      "      vertex 0 0 0\n"
      "      vertex 1 0 0\n"
      "      vertex 0 1 0\n"
      "    endloop\n"
      "  endfacet\n"
      "endsolid a\n";
  TriangleMesh a = parse_stl(ascii);
  TriangleMesh b = parse_stl(binary_stl_one_triangle());
  REQUIRE(a.vertices.size() == b.vertices.size());
  REQUIRE(a.triangles.size() == b.triangles.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) CHECK(a.vertices[i] == b.vertices[i]);
  CHECK(a.triangles[0] == b.triangles[0]);
  CHECK(a.name == "a");
}

TEST_CASE("parse_stl: truncated binary file") {
  std::string bytes = binary_stl_one_triangle();
  bytes[80] = 10;  // declare 10 triangles, keep bytes for 1
  CHECK_THROWS_WITH_AS(static_cast<void>(parse_stl(bytes)),
                       doctest::Contains("declares 10"), Error);
  try {
    static_cast<void>(parse_stl(bytes));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::truncated_file);
  }
}

TEST_CASE("parse_stl: empty input") {
  CHECK_THROWS_AS(static_cast<void>(parse_stl("")), Error);
  try {
    static_cast<void>(parse_stl("  \n "));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_input);
  }
}

TEST_CASE("parse_stl: ASCII syntax error reports line number") {
  const char* ascii =
      "solid broken\n"
      "  facet normal 0 0 1\n"
      "    outer loop\n"
      "      vertex 0 0 zero\n";
  try {
    static_cast<void>(parse_stl(ascii));
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::syntax_error);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("parse_stl: binary file starting with 'solid' still parses") {
  std::string bytes = binary_stl_one_triangle();
  const char tag[] = "solid-ish binary export";
  std::memcpy(bytes.data(), tag, sizeof(tag) - 1);
  TriangleMesh m = parse_stl(bytes);
  CHECK(m.triangles.size() == 1);
}

TEST_CASE("parse_stl: degenerate triangles dropped with count") {
  std::string ascii =
      "solid d\n"
      "facet normal 0 0 1\nouter loop\n"
      "vertex 0 0 0\nvertex 0 0 0\nvertex 1 1 0\n"
      "endloop\nendfacet\n"
      "facet normal 0 0 1\nouter loop\n"
      "vertex 0 0 0\nvertex 1 0 0\nvertex 2 0 0\n"
      "endloop\nendfacet\n"
      "facet normal 0 0 1\nouter loop\n"
      "vertex 0 0 0\nvertex 1 0 0\nvertex 0 1 0\n"
      "endloop\nendfacet\n"
      "endsolid d\n";
  TriangleMesh m = parse_stl(ascii);
  CHECK(m.triangles.size() == 1);       // repeated-vertex and collinear facets gone
  CHECK(m.dropped_degenerate == 2);
}

TEST_CASE("stl binary roundtrip is bit-exact") {
  Rng rng(derive_seed(11, "stl-roundtrip"));
  TriangleMesh m = ts::random_mesh(rng, 60, -2, 2);
  // Push through float quantization once so coordinates are representable.
  TriangleMesh m1 = parse_stl(serialize_stl_binary(m));
  TriangleMesh m2 = parse_stl(serialize_stl_binary(m1));
  REQUIRE(m1.vertices.size() == m2.vertices.size());
  REQUIRE(m1.triangles.size() == m2.triangles.size());
  for (std::size_t i = 0; i < m1.vertices.size(); ++i) {
    CHECK(m1.vertices[i] == m2.vertices[i]);  // exact doubles from exact floats
  }
  for (std::size_t i = 0; i < m1.triangles.size(); ++i) CHECK(m1.triangles[i] == m2.triangles[i]);
}

TEST_CASE("build_bvh: single triangle leaf bounds") {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}};
  Bvh bvh(m);
  REQUIRE(bvh.nodes().size() == 1);
  CHECK(bvh.nodes()[0].is_leaf());
  CHECK(bvh.bounds().min == Vec3{0, 0, 0});
  CHECK(bvh.bounds().max == Vec3{1, 1, 0});
}

TEST_CASE("build_bvh: empty mesh rejected") {
  TriangleMesh m;
  CHECK_THROWS_AS(Bvh{m}, Error);
}

TEST_CASE("build_bvh: every triangle reachable exactly once, boxes nest") {
  Rng rng(derive_seed(12, "bvh-walk"));
  TriangleMesh m = ts::random_mesh(rng, 1000, -5, 5);
  Bvh bvh(m);
  std::multiset<std::uint32_t> seen;
  // Walk the tree; check leaf boxes contain their triangles and parents contain children.
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const auto& node = bvh.nodes()[stack.back()];
    stack.pop_back();
    if (node.is_leaf()) {
      CHECK(node.count <= Bvh::kLeafSize);
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const std::uint32_t tri = bvh.order()[i];
        seen.insert(tri);
        for (const Vec3& v : m.triangle_vertices(tri)) CHECK(node.box.contains(v));
      }
    } else {
      CHECK(node.box.contains(bvh.nodes()[node.left].box));
      CHECK(node.box.contains(bvh.nodes()[node.right].box));
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }
  REQUIRE(seen.size() == m.triangles.size());
  for (std::uint32_t i = 0; i < m.triangles.size(); ++i) CHECK(seen.count(i) == 1);
}

TEST_CASE("ray_cast: analytic hit on unit triangle") {
  TriangleMesh m;
  m.vertices = {{-1, -1, 1}, {1, -1, 1}, {0, 1, 1}};
  m.triangles = {{0, 1, 2}};
  Bvh bvh(m);
  auto hit = ray_cast(m, bvh, {0, 0, -1}, {0, 0, 1}, 100.0);
  REQUIRE(hit.has_value());
  CHECK(hit->t == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(hit->barycentric[0] + hit->barycentric[1] + hit->barycentric[2] ==
        doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ray_cast: miss is a valid result") {
  TriangleMesh m;
  m.vertices = {{-1, -1, 1}, {1, -1, 1}, {0, 1, 1}};
  m.triangles = {{0, 1, 2}};
  Bvh bvh(m);
  CHECK(!ray_cast(m, bvh, {0, 0, -1}, {0, 0, -1}, 100.0).has_value());
  CHECK(!ray_cast(m, bvh, {0, 0, -1}, {0, 0, 1}, 1.0).has_value());  // t_max short of the plane
}

TEST_CASE("ray_cast: parity with brute force on random rays") {
  Rng rng(derive_seed(13, "ray-parity"));
  TriangleMesh m = ts::random_mesh(rng, 400, -3, 3);
  Bvh bvh(m);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    const Vec3 origin{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const Vec3 dir = ts::random_unit_vector(rng);
    auto fast = ray_cast(m, bvh, origin, dir, 50.0);
    auto slow = ts::ray_cast_brute_force(m, origin, dir, 50.0);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) {
      ++hits;
      CHECK(fast->triangle == slow->triangle);
      CHECK(std::abs(fast->t - slow->t) <= 1e-9 * std::max(1.0, slow->t));
    }
  }
  CHECK(hits > 100);  // the scene is dense enough for the parity check to mean something
}

TEST_CASE("meshes_collide: separated and overlapping cubes") {
  TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
  Transform id;
  Transform far_away;
  far_away.translation = {3, 0, 0};
  CHECK(!meshes_collide(cube, id, cube, far_away));
  CHECK(meshes_collide(cube, id, cube, id));
}

TEST_CASE("meshes_collide: cubes sharing exactly one face touch") {
  TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
  Transform id;
  Transform shifted;
  shifted.translation = {1.0, 0, 0};  // faces coincide at x = 0.5
  CHECK(meshes_collide(cube, id, cube, shifted));
  Transform separated;
  separated.translation = {1.0 + 1e-9, 0, 0};
  CHECK(!meshes_collide(cube, id, cube, separated));
}

TEST_CASE("meshes_collide: empty mesh rejected") {
  TriangleMesh cube = make_box({0, 0, 0}, {1, 1, 1});
  TriangleMesh empty;
  Transform id;
  CHECK_THROWS_AS(static_cast<void>(meshes_collide(cube, id, empty, id)), Error);
}

TEST_CASE("meshes_collide: agreement with all-pairs brute force") {
  Rng rng(derive_seed(14, "collide-parity"));
  int collisions = 0;
  for (int trial = 0; trial < 60; ++trial) {
    TriangleMesh a = ts::random_mesh(rng, 30, -1, 1);
    TriangleMesh b = ts::random_mesh(rng, 30, -1, 1);
    Transform ta;
    ta.rotation = ts::random_rotation(rng);
    ta.translation = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    Transform tb;
    tb.rotation = ts::random_rotation(rng);
    tb.translation = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    const bool fast = meshes_collide(a, ta, b, tb);
    const bool slow = ts::meshes_collide_brute_force(a, ta, b, tb);
    CHECK(fast == slow);
    collisions += fast ? 1 : 0;
  }
  CHECK(collisions > 5);  // mix of outcomes
  CHECK(collisions < 60);
}

TEST_CASE("meshes_collide: symmetric and rigid-invariant") {
  Rng rng(derive_seed(15, "collide-props"));
  for (int trial = 0; trial < 30; ++trial) {
    TriangleMesh a = ts::random_mesh(rng, 20, -1, 1);
    TriangleMesh b = ts::random_mesh(rng, 20, -1, 1);
    PreparedMesh pa{a};
    PreparedMesh pb{b};
    Transform ta;
    ta.translation = {rng.uniform(-1.2, 1.2), 0, 0};
    Transform tb;
    tb.rotation = ts::random_rotation(rng);
    const bool forward = meshes_collide(pa, ta, pb, tb);
    CHECK(meshes_collide(pb, tb, pa, ta) == forward);

    Transform rigid;
    rigid.rotation = ts::random_rotation(rng);
    rigid.translation = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    CHECK(meshes_collide(pa, rigid.compose(ta), pb, rigid.compose(tb)) == forward);
  }
}

TEST_CASE("tri_box_overlap: touching counts") {
  const Vec3 c{0, 0, 0};
  const Vec3 h{0.5, 0.5, 0.5};
  CHECK(tri_box_overlap(c, h, {0.5, -1, -1}, {0.5, 1, -1}, {0.5, 0, 1}));   // on the +x face
  CHECK(!tri_box_overlap(c, h, {0.51, -1, -1}, {0.51, 1, -1}, {0.51, 0, 1}));
  CHECK(tri_box_overlap(c, h, {-2, -2, 0}, {2, -2, 0}, {0, 2, 0}));         // slices through
}
