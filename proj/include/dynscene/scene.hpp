// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "dynscene/bvh.hpp"
#include "dynscene/math3.hpp"
#include "dynscene/mesh.hpp"
#include "dynscene/rng.hpp"

namespace dynscene {

// Semantic class ids shared across rendering, export, and filtering.
// 0 is reserved for background (ray misses and static geometry).
enum class SemanticClass : std::uint16_t {
  background = 0,
  human = 1,
  flying_object = 2,
};

struct Environment {
  struct StaticMesh {
    TriangleMesh mesh;
    std::string label;  // free-form; "floor" marks traversable floor
  };
  std::vector<StaticMesh> meshes;
  Aabb bounds;
  double floor_height = 0.0;
  std::string manifest_id;
};

// Manifest: JSON file listing mesh paths (relative to the manifest), labels,
// and the floor height. At least one mesh must be labelled "floor".
Environment load_environment(const std::filesystem::path& manifest_path);

struct AppearanceRanges {
  int texture_id_lo = 0;
  int texture_id_hi = 63;
  std::array<double, 3> light_color_lo{0.3, 0.3, 0.3};
  std::array<double, 3> light_color_hi{1.0, 1.0, 1.0};
  double light_intensity_lo = 300.0;
  double light_intensity_hi = 1000.0;
};

struct AppearanceRandomization {
  std::vector<int> texture_ids;  // one per environment mesh
  std::array<double, 3> light_color{1, 1, 1};
  double light_intensity = 1.0;
  double light_intensity_hi = 1.0;  // range cap, kept for shading normalization
};

AppearanceRandomization randomize_environment(const Environment& env,
                                              std::uint64_t seed,
                                              const AppearanceRanges& ranges);

struct AnimationTrack {
  enum class Kind { mesh_sequence, rigid_keyframes };

  struct Keyframe {
    double t = 0.0;
    Transform pose;
  };

  Kind kind = Kind::rigid_keyframes;
  double rate = 30.0;  // mesh-sequence frame rate, Hz

  // mesh_sequence: per-frame vertex arrays over one shared triangle list.
  std::vector<std::vector<Vec3>> frame_vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  // rigid_keyframes: strictly increasing timestamps; linear position and
  // spherical-linear rotation interpolation between them.
  std::vector<Keyframe> keyframes;

  double duration() const;
  Transform rigid_at(double t) const;  // keyframe tracks only
};

struct AssetInstance {
  std::uint32_t id = 0;  // contiguous from 1 in creation order
  SemanticClass cls = SemanticClass::human;
  std::string asset_name;
  TriangleMesh base_mesh;
  AnimationTrack track;
  Transform placement;
};

struct Scene {
  std::shared_ptr<const Environment> environment;
  AppearanceRandomization appearance;
  std::vector<AssetInstance> instances;
  std::uint64_t master_seed = 0;

  bool has_flying_objects() const;
  SemanticClass class_of_instance(std::uint32_t instance_id) const;  // 0 = background
};

// Asset library: directory with library.json naming human animation
// sequences (STL frame lists at a fixed rate) and rigid object meshes.
struct HumanAsset {
  std::string name;
  double rate = 30.0;
  std::vector<std::vector<Vec3>> frame_vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  TriangleMesh swept;  // union of all frames, for placement collision
};

struct ObjectAsset {
  std::string name;
  TriangleMesh mesh;
};

struct AssetLibrary {
  std::vector<HumanAsset> humans;
  std::vector<ObjectAsset> objects;
};

AssetLibrary load_asset_library(const std::filesystem::path& dir);

struct PlacementOptions {
  int max_attempts = 100;
  double floor_clearance = 0.01;  // lift above the floor plane so the closed
                                  // collision test does not reject all poses
  bool reject_human_overlap = true;
  double duration = 60.0;  // experiment duration the tracks must cover
};

// Rejection-samples `count` humans: uniform yaw, floor-level translation in
// env bounds, swept (all-frames union) mesh collision-free against the
// environment and, optionally, against already placed humans.
// Throws PlacementFailed naming how many were placed.
std::vector<AssetInstance> place_humans(const Environment& env,
                                        const std::vector<HumanAsset>& assets,
                                        int count, std::uint64_t seed,
                                        const PlacementOptions& opts);

// Rigid waypoint tracks through env bounds; per-segment speed uniform in
// [speed_lo, speed_hi]; no collision checking. Tracks cover `duration`.
std::vector<AssetInstance> spawn_flying_objects(const Environment& env,
                                                const std::vector<ObjectAsset>& meshes,
                                                int count, std::uint64_t seed,
                                                double speed_lo, double speed_hi,
                                                double duration,
                                                std::uint32_t first_id);

struct SceneConfig {
  int human_count_lo = 1, human_count_hi = 3;
  int object_count_lo = 0, object_count_hi = 2;
  AppearanceRanges appearance;
  double object_speed_lo = 0.5, object_speed_hi = 2.0;
  PlacementOptions placement;
};

// Draws counts, randomizes appearance, places humans, spawns flyers.
// Fully determined by (env, library, seed, cfg).
Scene sample_scene(std::shared_ptr<const Environment> env, const AssetLibrary& library,
                   std::uint64_t seed, const SceneConfig& cfg);

// Snapshot of an instance's world-space mesh at time t in [0, duration].
TriangleMesh instance_mesh_at(const AssetInstance& instance, double t);

// Canonical JSON capture of seed, appearance, placements, and keyframes.
// Byte-identical for identical inputs.
std::string serialize_scene(const Scene& scene);

}  // namespace dynscene
