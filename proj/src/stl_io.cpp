// SPDX-License-Identifier: Apache-2.0
#include "dynscene/stl_io.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cstring>
#include <fstream>
#include <unordered_map>

#include "dynscene/error.hpp"

namespace dynscene {
namespace {

struct VertexKey {
  std::uint32_t bits[3];
  bool operator==(const VertexKey& o) const {
    return bits[0] == o.bits[0] && bits[1] == o.bits[1] && bits[2] == o.bits[2];
  }
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t b : k.bits) {
      h ^= b;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

class MeshAssembler {
 public:
  std::uint32_t add_vertex(float x, float y, float z) {
    VertexKey key{{std::bit_cast<std::uint32_t>(x), std::bit_cast<std::uint32_t>(y),
                   std::bit_cast<std::uint32_t>(z)}};
    auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
    if (inserted) mesh.vertices.push_back({x, y, z});
    return it->second;
  }

  void add_triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    if (a == b || b == c || a == c) {
      ++mesh.dropped_degenerate;
      return;
    }
    const Vec3 e1 = mesh.vertices[b] - mesh.vertices[a];
    const Vec3 e2 = mesh.vertices[c] - mesh.vertices[a];
    const Vec3 n = cross(e1, e2);
    if (n.x == 0.0 && n.y == 0.0 && n.z == 0.0) {
      ++mesh.dropped_degenerate;
      return;
    }
    mesh.triangles.push_back({a, b, c});
  }

  TriangleMesh mesh;

 private:
  std::unordered_map<VertexKey, std::uint32_t, VertexKeyHash> index_;
};

float read_f32le(const char* p) {
  std::uint32_t v = static_cast<std::uint8_t>(p[0]) |
                    (static_cast<std::uint32_t>(static_cast<std::uint8_t>(p[1])) << 8) |
                    (static_cast<std::uint32_t>(static_cast<std::uint8_t>(p[2])) << 16) |
                    (static_cast<std::uint32_t>(static_cast<std::uint8_t>(p[3])) << 24);
  return std::bit_cast<float>(v);
}

void write_f32le(std::string& out, float f) {
  std::uint32_t v = std::bit_cast<std::uint32_t>(f);
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

TriangleMesh parse_binary(std::string_view bytes) {
  if (bytes.size() < 84) {
    fail(Errc::truncated_file,
         "binary STL shorter than its 84-byte preamble (" + std::to_string(bytes.size()) + " bytes)");
  }
  std::uint32_t count;
  std::memcpy(&count, bytes.data() + 80, 4);  // little-endian hosts only
  const std::size_t expected = 84 + static_cast<std::size_t>(count) * 50;
  if (bytes.size() != expected) {
    fail(Errc::truncated_file,
         "binary STL declares " + std::to_string(count) + " triangles (" +
             std::to_string(expected) + " bytes) but file has " +
             std::to_string(bytes.size()));
  }
  MeshAssembler out;
  out.mesh.name.assign(bytes.data(), strnlen(bytes.data(), 80));
  for (std::uint32_t i = 0; i < count; ++i) {
    const char* rec = bytes.data() + 84 + static_cast<std::size_t>(i) * 50;
    // 12 bytes of stored normal skipped; normals are recomputed on demand.
    std::uint32_t idx[3];
    for (int v = 0; v < 3; ++v) {
      const char* p = rec + 12 + v * 12;
      idx[v] = out.add_vertex(read_f32le(p), read_f32le(p + 4), read_f32le(p + 8));
    }
    out.add_triangle(idx[0], idx[1], idx[2]);
  }
  return std::move(out.mesh);
}

struct AsciiTokenizer {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  void skip_space() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
        ++pos;
      } else {
        break;
      }
    }
  }

  // Next whitespace-delimited token, empty at EOF.
  std::string_view next() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  }

  std::string_view peek() {
    std::size_t save_pos = pos;
    int save_line = line;
    std::string_view t = next();
    pos = save_pos;
    line = save_line;
    return t;
  }

  // Rest of the current line (for solid names, which may contain spaces).
  void skip_line() {
    while (pos < text.size() && text[pos] != '\n') ++pos;
  }
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i])))
      return false;
  }
  return true;
}

[[noreturn]] void ascii_fail(const AsciiTokenizer& tok, const std::string& what) {
  fail(Errc::syntax_error, "ASCII STL line " + std::to_string(tok.line) + ": " + what);
}

void expect_keyword(AsciiTokenizer& tok, std::string_view kw) {
  std::string_view t = tok.next();
  if (!iequals(t, kw)) {
    ascii_fail(tok, "expected '" + std::string(kw) + "', got '" + std::string(t) + "'");
  }
}

double expect_number(AsciiTokenizer& tok) {
  std::string_view t = tok.next();
  double v;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || end != t.data() + t.size()) {
    ascii_fail(tok, "expected a number, got '" + std::string(t) + "'");
  }
  return v;
}

TriangleMesh parse_ascii(std::string_view bytes) {
  AsciiTokenizer tok{bytes};
  expect_keyword(tok, "solid");
  tok.skip_space();
  std::size_t name_start = tok.pos;
  tok.skip_line();
  MeshAssembler out;
  out.mesh.name.assign(bytes.substr(name_start, tok.pos - name_start));
  while (!out.mesh.name.empty() &&
         std::isspace(static_cast<unsigned char>(out.mesh.name.back()))) {
    out.mesh.name.pop_back();
  }
  for (;;) {
    std::string_view t = tok.peek();
    if (iequals(t, "endsolid")) break;
    if (t.empty()) ascii_fail(tok, "unexpected end of file before 'endsolid'");
    expect_keyword(tok, "facet");
    expect_keyword(tok, "normal");
    for (int i = 0; i < 3; ++i) expect_number(tok);  // stored normal ignored
    expect_keyword(tok, "outer");
    expect_keyword(tok, "loop");
    std::uint32_t idx[3];
    for (int v = 0; v < 3; ++v) {
      expect_keyword(tok, "vertex");
      // ASCII coordinates pass through float so both encodings of the same
      // facet weld to identical vertices.
      float x = static_cast<float>(expect_number(tok));
      float y = static_cast<float>(expect_number(tok));
      float z = static_cast<float>(expect_number(tok));
      idx[v] = out.add_vertex(x, y, z);
    }
    expect_keyword(tok, "endloop");
    expect_keyword(tok, "endfacet");
    out.add_triangle(idx[0], idx[1], idx[2]);
  }
  expect_keyword(tok, "endsolid");
  tok.skip_line();
  if (!tok.next().empty()) ascii_fail(tok, "trailing content after 'endsolid'");
  return std::move(out.mesh);
}

}  // namespace

TriangleMesh parse_stl(std::string_view bytes) {
  bool all_space = true;
  for (char c : bytes) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      all_space = false;
      break;
    }
  }
  if (all_space) fail(Errc::empty_input, "empty STL input");

  if (bytes.size() >= 5 && iequals(bytes.substr(0, 5), "solid")) {
    try {
      return parse_ascii(bytes);
    } catch (const Error& ascii_error) {
      // Binary files may legitimately start with "solid"; retry as binary
      // and keep the more informative ASCII diagnostic if both fail.
      try {
        return parse_binary(bytes);
      } catch (const Error&) {
        throw ascii_error;
      }
    }
  }
  return parse_binary(bytes);
}

std::string serialize_stl_binary(const TriangleMesh& mesh) {
  std::string out;
  out.reserve(84 + mesh.triangles.size() * 50);
  std::string header = mesh.name.substr(0, 79);
  header.resize(80, '\0');
  out += header;
  const std::uint32_t count = static_cast<std::uint32_t>(mesh.triangles.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((count >> (8 * i)) & 0xFF));
  for (const auto& tri : mesh.triangles) {
    const Vec3 a = mesh.vertices[tri[0]];
    const Vec3 b = mesh.vertices[tri[1]];
    const Vec3 c = mesh.vertices[tri[2]];
    const Vec3 n = normalized(cross(b - a, c - a));
    write_f32le(out, static_cast<float>(n.x));
    write_f32le(out, static_cast<float>(n.y));
    write_f32le(out, static_cast<float>(n.z));
    for (const Vec3& v : {a, b, c}) {
      write_f32le(out, static_cast<float>(v.x));
      write_f32le(out, static_cast<float>(v.y));
      write_f32le(out, static_cast<float>(v.z));
    }
    out.push_back('\0');
    out.push_back('\0');
  }
  return out;
}

TriangleMesh read_stl_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    TriangleMesh m = parse_stl(bytes);
    if (m.name.empty()) m.name = path.stem().string();
    return m;
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_stl_file(const std::filesystem::path& path, const TriangleMesh& mesh) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io_failure, "cannot open " + path.string() + " for writing");
  const std::string bytes = serialize_stl_binary(mesh);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(Errc::io_failure, "short write to " + path.string());
}

}  // namespace dynscene
