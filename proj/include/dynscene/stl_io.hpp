// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dynscene/mesh.hpp"

namespace dynscene {

// Parses a complete STL file image, binary or ASCII, auto-detected.
// Detection rule: the input is treated as ASCII iff bytes 0..5 read "solid"
// case-insensitively AND the whole input parses under the ASCII grammar;
// otherwise it is parsed as binary (real binary exports sometimes start
// with "solid"). Stored facet normals are ignored. Degenerate triangles
// (repeated vertex position or zero area) are dropped and counted in
// TriangleMesh::dropped_degenerate. Identical vertex positions (bit-exact)
// are welded in first-occurrence order.
TriangleMesh parse_stl(std::string_view bytes);

// Binary STL image: 80-byte header, little-endian triangle count, 50-byte
// records. Coordinates are written as 32-bit floats; parse(serialize(m)) is
// bit-exact whenever m's coordinates are float-representable (always true
// for meshes that came from parse_stl).
std::string serialize_stl_binary(const TriangleMesh& mesh);

TriangleMesh read_stl_file(const std::filesystem::path& path);
void write_stl_file(const std::filesystem::path& path, const TriangleMesh& mesh);

}  // namespace dynscene
