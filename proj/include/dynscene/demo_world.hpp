// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "dynscene/scene.hpp"

namespace dynscene {

struct DemoWorldOptions {
  double room_w = 8.0;
  double room_d = 6.0;
  double room_h = 2.5;
  int human_assets = 2;
  int object_assets = 2;
  int frames_per_human = 8;  // animation frames per human asset
};

// Writes a self-contained sample workspace under `dir`:
//   env/manifest.json + wall/floor/ceiling STLs
//   assets/library.json + human animation frames + object meshes
// Returns the manifest path. Deterministic; meant for demos and tests.
std::filesystem::path write_demo_world(const std::filesystem::path& dir,
                                       const DemoWorldOptions& opts = {});

// Same geometry as an in-memory environment (walls, floor, ceiling, one
// interior pillar unless disabled), without touching the filesystem.
Environment make_room_environment(double w, double d, double h, bool with_pillar,
                                  const std::string& id = "room");

// In-memory box "human" whose animation bobs vertically: `frames` snapshots
// of a box of the given size with feet at z = 0.
HumanAsset make_box_human(const std::string& name, const Vec3& size, int frames,
                          double rate, double bob_amplitude = 0.05);

}  // namespace dynscene
