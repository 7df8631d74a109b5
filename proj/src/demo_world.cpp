// SPDX-License-Identifier: Apache-2.0
#include "dynscene/demo_world.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dynscene/error.hpp"
#include "dynscene/stl_io.hpp"

namespace dynscene {

namespace {

// Room shell spanning [0,w] x [0,d] x [0,h]: six inward-facing quads plus an
// optional pillar so exploration has something to look around.
std::vector<Environment::StaticMesh> room_meshes(double w, double d, double h,
                                                 bool with_pillar) {
  std::vector<Environment::StaticMesh> out;
  auto add = [&](TriangleMesh m, const std::string& label) {
    m.name = label;
    out.push_back({std::move(m), label});
  };
  add(make_quad({0, 0, 0}, {w, 0, 0}, {w, d, 0}, {0, d, 0}), "floor");
  add(make_quad({0, 0, h}, {0, d, h}, {w, d, h}, {w, 0, h}), "ceiling");
  add(make_quad({0, 0, 0}, {0, d, 0}, {0, d, h}, {0, 0, h}), "wall");
  add(make_quad({w, 0, 0}, {w, 0, h}, {w, d, h}, {w, d, 0}), "wall");
  add(make_quad({0, 0, 0}, {0, 0, h}, {w, 0, h}, {w, 0, 0}), "wall");
  add(make_quad({0, d, 0}, {w, d, 0}, {w, d, h}, {0, d, h}), "wall");
  if (with_pillar) {
    add(make_box({0.25 * w, 0.6 * d, 0.5 * h}, {0.4, 0.4, h}), "pillar");
  }
  return out;
}

}  // namespace

Environment make_room_environment(double w, double d, double h, bool with_pillar,
                                  const std::string& id) {
  Environment env;
  env.manifest_id = id;
  env.floor_height = 0.0;
  env.meshes = room_meshes(w, d, h, with_pillar);
  for (const auto& sm : env.meshes) env.bounds.expand(sm.mesh.bounds());
  return env;
}

HumanAsset make_box_human(const std::string& name, const Vec3& size, int frames,
                          double rate, double bob_amplitude) {
  HumanAsset asset;
  asset.name = name;
  asset.rate = rate;
  const TriangleMesh base = make_box({0, 0, size.z * 0.5}, size, name);
  asset.triangles = base.triangles;
  for (int f = 0; f < frames; ++f) {
    const double phase = frames > 1 ? static_cast<double>(f) / frames : 0.0;
    const double lift = bob_amplitude * (1.0 - std::cos(6.283185307179586477 * phase)) * 0.5;
    std::vector<Vec3> verts = base.vertices;
    for (Vec3& v : verts) v.z += lift;
    asset.frame_vertices.push_back(std::move(verts));
  }
  TriangleMesh swept;
  swept.name = name + "_swept";
  for (const auto& verts : asset.frame_vertices) {
    const std::uint32_t b = static_cast<std::uint32_t>(swept.vertices.size());
    swept.vertices.insert(swept.vertices.end(), verts.begin(), verts.end());
    for (const auto& tri : asset.triangles) {
      swept.triangles.push_back({tri[0] + b, tri[1] + b, tri[2] + b});
    }
  }
  asset.swept = std::move(swept);
  return asset;
}

std::filesystem::path write_demo_world(const std::filesystem::path& dir,
                                       const DemoWorldOptions& opts) {
  namespace fs = std::filesystem;
  const fs::path env_dir = dir / "env";
  const fs::path asset_dir = dir / "assets";
  fs::create_directories(env_dir);
  fs::create_directories(asset_dir);

  nlohmann::ordered_json manifest;
  manifest["id"] = "demo-room";
  manifest["floor_height"] = 0.0;
  nlohmann::ordered_json mesh_list = nlohmann::ordered_json::array();
  int mesh_index = 0;
  for (const auto& sm : room_meshes(opts.room_w, opts.room_d, opts.room_h, true)) {
    const std::string file = "mesh_" + std::to_string(mesh_index++) + ".stl";
    write_stl_file(env_dir / file, sm.mesh);
    mesh_list.push_back({{"path", file}, {"label", sm.label}});
  }
  manifest["meshes"] = std::move(mesh_list);
  const fs::path manifest_path = env_dir / "manifest.json";
  {
    std::ofstream out(manifest_path);
    if (!out) fail(Errc::io_failure, "cannot write " + manifest_path.string());
    out << manifest.dump(2) << "\n";
  }

  nlohmann::ordered_json library;
  nlohmann::ordered_json humans = nlohmann::ordered_json::array();
  for (int hidx = 0; hidx < opts.human_assets; ++hidx) {
    const std::string name = "person_" + std::to_string(hidx);
    const Vec3 size{0.45 + 0.1 * hidx, 0.3, 1.6 + 0.1 * hidx};
    HumanAsset asset = make_box_human(name, size, opts.frames_per_human, 30.0);
    nlohmann::ordered_json frames = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < asset.frame_vertices.size(); ++f) {
      TriangleMesh frame;
      frame.name = name;
      frame.vertices = asset.frame_vertices[f];
      frame.triangles = asset.triangles;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s_%03zu.stl", name.c_str(), f);
      write_stl_file(asset_dir / buf, frame);
      frames.push_back(std::string(buf));
    }
    humans.push_back({{"name", name}, {"rate", 30.0}, {"frames", std::move(frames)}});
  }
  library["humans"] = std::move(humans);
  nlohmann::ordered_json objects = nlohmann::ordered_json::array();
  for (int oidx = 0; oidx < opts.object_assets; ++oidx) {
    const std::string name = "object_" + std::to_string(oidx);
    const double s = 0.25 + 0.15 * oidx;
    write_stl_file(asset_dir / (name + ".stl"), make_box({0, 0, 0}, {s, s, s}, name));
    objects.push_back({{"name", name}, {"path", name + ".stl"}});
  }
  library["objects"] = std::move(objects);
  {
    std::ofstream out(asset_dir / "library.json");
    if (!out) fail(Errc::io_failure, "cannot write library.json");
    out << library.dump(2) << "\n";
  }
  return manifest_path;
}

}  // namespace dynscene
