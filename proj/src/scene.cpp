// SPDX-License-Identifier: Apache-2.0
#include "dynscene/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dynscene/collide.hpp"
#include "dynscene/error.hpp"
#include "dynscene/stl_io.hpp"

namespace dynscene {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_failure, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::parse_error, path.string() + ": " + e.what());
  }
}

}  // namespace

Environment load_environment(const std::filesystem::path& manifest_path) {
  const nlohmann::json j = load_json_file(manifest_path);
  Environment env;
  try {
    env.manifest_id = j.at("id").get<std::string>();
    env.floor_height = j.at("floor_height").get<double>();
    const auto dir = manifest_path.parent_path();
    for (const auto& entry : j.at("meshes")) {
      Environment::StaticMesh sm;
      sm.label = entry.at("label").get<std::string>();
      sm.mesh = read_stl_file(dir / entry.at("path").get<std::string>());
      env.meshes.push_back(std::move(sm));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, manifest_path.string() + ": " + e.what());
  }
  bool has_floor = false;
  for (const auto& sm : env.meshes) {
    env.bounds.expand(sm.mesh.bounds());
    if (sm.label == "floor") has_floor = true;
  }
  if (!has_floor) {
    fail(Errc::bad_config, manifest_path.string() + ": no mesh labelled 'floor'");
  }
  return env;
}

AppearanceRandomization randomize_environment(const Environment& env,
                                              std::uint64_t seed,
                                              const AppearanceRanges& r) {
  if (r.texture_id_lo > r.texture_id_hi ||
      r.light_intensity_lo > r.light_intensity_hi) {
    fail(Errc::bad_range, "appearance ranges must satisfy lo <= hi");
  }
  for (int c = 0; c < 3; ++c) {
    if (r.light_color_lo[c] > r.light_color_hi[c] || r.light_color_lo[c] < 0.0 ||
        r.light_color_hi[c] > 1.0) {
      fail(Errc::bad_range, "light color ranges must be ordered within [0,1]");
    }
  }
  Rng rng(derive_seed(seed, "appearance", fnv1a64(env.manifest_id)));
  AppearanceRandomization out;
  out.texture_ids.reserve(env.meshes.size());
  for (std::size_t i = 0; i < env.meshes.size(); ++i) {
    out.texture_ids.push_back(static_cast<int>(rng.uniform_int(r.texture_id_lo, r.texture_id_hi)));
  }
  for (int c = 0; c < 3; ++c) {
    out.light_color[c] = rng.uniform(r.light_color_lo[c], r.light_color_hi[c]);
  }
  out.light_intensity = rng.uniform(r.light_intensity_lo, r.light_intensity_hi);
  out.light_intensity_hi = r.light_intensity_hi;
  return out;
}

double AnimationTrack::duration() const {
  if (kind == Kind::mesh_sequence) {
    return frame_vertices.empty() ? 0.0
                                  : static_cast<double>(frame_vertices.size() - 1) / rate;
  }
  return keyframes.empty() ? 0.0 : keyframes.back().t;
}

Transform AnimationTrack::rigid_at(double t) const {
  if (kind != Kind::rigid_keyframes || keyframes.empty()) {
    fail(Errc::invariant_violation, "rigid_at on a non-keyframe track");
  }
  if (t <= keyframes.front().t) return keyframes.front().pose;
  if (t >= keyframes.back().t) return keyframes.back().pose;
  const auto it = std::lower_bound(keyframes.begin(), keyframes.end(), t,
                                   [](const Keyframe& k, double v) { return k.t < v; });
  const Keyframe& a = *(it - 1);
  const Keyframe& b = *it;
  if (t == a.t) return a.pose;
  if (t == b.t) return b.pose;
  const double u = (t - a.t) / (b.t - a.t);
  Transform out;
  out.translation = a.pose.translation + (b.pose.translation - a.pose.translation) * u;
  out.rotation = slerp(a.pose.rotation, b.pose.rotation, u);
  out.scale = a.pose.scale + (b.pose.scale - a.pose.scale) * u;
  return out;
}

bool Scene::has_flying_objects() const {
  for (const auto& inst : instances) {
    if (inst.cls == SemanticClass::flying_object) return true;
  }
  return false;
}

SemanticClass Scene::class_of_instance(std::uint32_t instance_id) const {
  if (instance_id == 0 || instance_id > instances.size()) return SemanticClass::background;
  return instances[instance_id - 1].cls;
}

AssetLibrary load_asset_library(const std::filesystem::path& dir) {
  const auto manifest = dir / "library.json";
  const nlohmann::json j = load_json_file(manifest);
  AssetLibrary lib;
  try {
    for (const auto& h : j.value("humans", nlohmann::json::array())) {
      HumanAsset asset;
      asset.name = h.at("name").get<std::string>();
      asset.rate = h.at("rate").get<double>();
      if (asset.rate <= 0.0) fail(Errc::bad_config, "asset rate must be positive");
      std::vector<TriangleMesh> frames;
      for (const auto& f : h.at("frames")) {
        frames.push_back(read_stl_file(dir / f.get<std::string>()));
      }
      if (frames.empty()) fail(Errc::bad_config, asset.name + ": no animation frames");
      asset.triangles = frames.front().triangles;
      for (auto& fr : frames) {
        if (fr.triangles != asset.triangles || fr.vertices.size() != frames.front().vertices.size()) {
          fail(Errc::bad_config, asset.name + ": animation frames must share one topology");
        }
        asset.frame_vertices.push_back(std::move(fr.vertices));
      }
      // Union (swept) mesh over all frames for conservative placement tests.
      TriangleMesh swept;
      swept.name = asset.name + "_swept";
      for (const auto& verts : asset.frame_vertices) {
        const std::uint32_t base = static_cast<std::uint32_t>(swept.vertices.size());
        swept.vertices.insert(swept.vertices.end(), verts.begin(), verts.end());
        for (const auto& tri : asset.triangles) {
          swept.triangles.push_back({tri[0] + base, tri[1] + base, tri[2] + base});
        }
      }
      asset.swept = std::move(swept);
      lib.humans.push_back(std::move(asset));
    }
    for (const auto& o : j.value("objects", nlohmann::json::array())) {
      ObjectAsset asset;
      asset.name = o.at("name").get<std::string>();
      asset.mesh = read_stl_file(dir / o.at("path").get<std::string>());
      lib.objects.push_back(std::move(asset));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, manifest.string() + ": " + e.what());
  }
  return lib;
}

namespace {

AnimationTrack tiled_mesh_sequence(const HumanAsset& asset, double duration) {
  AnimationTrack track;
  track.kind = AnimationTrack::Kind::mesh_sequence;
  track.rate = asset.rate;
  track.triangles = asset.triangles;
  const std::size_t needed = static_cast<std::size_t>(std::ceil(duration * asset.rate)) + 1;
  track.frame_vertices.reserve(needed);
  while (track.frame_vertices.size() < needed) {
    for (const auto& fv : asset.frame_vertices) {
      track.frame_vertices.push_back(fv);
      if (track.frame_vertices.size() >= needed) break;
    }
  }
  return track;
}

}  // namespace

std::vector<AssetInstance> place_humans(const Environment& env,
                                        const std::vector<HumanAsset>& assets,
                                        int count, std::uint64_t seed,
                                        const PlacementOptions& opts) {
  if (count < 0) fail(Errc::bad_range, "human count must be >= 0");
  std::vector<AssetInstance> placed;
  if (count == 0) return placed;
  if (assets.empty()) fail(Errc::bad_config, "no human assets available");

  std::vector<PreparedMesh> env_prepared;
  for (const auto& sm : env.meshes) {
    if (!sm.mesh.empty()) env_prepared.emplace_back(sm.mesh);
  }
  std::vector<std::unique_ptr<PreparedMesh>> swept_prepared(assets.size());
  auto swept_for = [&](std::size_t a) -> const PreparedMesh& {
    if (!swept_prepared[a]) swept_prepared[a] = std::make_unique<PreparedMesh>(assets[a].swept);
    return *swept_prepared[a];
  };
  std::vector<std::size_t> placed_asset;  // parallel to `placed`
  const Transform identity;

  for (int h = 0; h < count; ++h) {
    Rng rng(derive_seed(seed, "human-place", static_cast<std::uint64_t>(h)));
    const std::size_t asset_idx = rng.pick_index(assets.size());
    const PreparedMesh& swept = swept_for(asset_idx);
    bool done = false;
    for (int attempt = 0; attempt < opts.max_attempts && !done; ++attempt) {
      Transform t;
      t.rotation = Quat::from_yaw(rng.uniform(0.0, kTwoPi));
      t.translation = {rng.uniform(env.bounds.min.x, env.bounds.max.x),
                       rng.uniform(env.bounds.min.y, env.bounds.max.y),
                       env.floor_height + opts.floor_clearance};
      bool hit = false;
      for (const auto& pm : env_prepared) {
        if (meshes_collide(swept, t, pm, identity)) {
          hit = true;
          break;
        }
      }
      if (!hit && opts.reject_human_overlap) {
        for (std::size_t p = 0; p < placed.size(); ++p) {
          if (meshes_collide(swept, t, swept_for(placed_asset[p]), placed[p].placement)) {
            hit = true;
            break;
          }
        }
      }
      if (hit) continue;
      AssetInstance inst;
      inst.id = static_cast<std::uint32_t>(placed.size() + 1);
      inst.cls = SemanticClass::human;
      inst.asset_name = assets[asset_idx].name;
      inst.base_mesh.name = assets[asset_idx].name;
      inst.base_mesh.vertices = assets[asset_idx].frame_vertices.front();
      inst.base_mesh.triangles = assets[asset_idx].triangles;
      inst.track = tiled_mesh_sequence(assets[asset_idx], opts.duration);
      inst.placement = t;
      placed.push_back(std::move(inst));
      placed_asset.push_back(asset_idx);
      done = true;
    }
    if (!done) {
      fail(Errc::placement_failed,
           "placed " + std::to_string(placed.size()) + " of " + std::to_string(count) +
               " humans before exhausting " + std::to_string(opts.max_attempts) +
               " attempts");
    }
  }
  return placed;
}

std::vector<AssetInstance> spawn_flying_objects(const Environment& env,
                                                const std::vector<ObjectAsset>& meshes,
                                                int count, std::uint64_t seed,
                                                double speed_lo, double speed_hi,
                                                double duration,
                                                std::uint32_t first_id) {
  if (count < 0) fail(Errc::bad_range, "object count must be >= 0");
  if (speed_lo > speed_hi || speed_lo <= 0.0) {
    fail(Errc::bad_range, "object speed range must satisfy 0 < lo <= hi");
  }
  std::vector<AssetInstance> out;
  if (count == 0) return out;
  if (meshes.empty()) fail(Errc::bad_config, "no object assets available");

  auto sample_point = [&](Rng& rng) {
    return Vec3{rng.uniform(env.bounds.min.x, env.bounds.max.x),
                rng.uniform(env.bounds.min.y, env.bounds.max.y),
                rng.uniform(env.bounds.min.z, env.bounds.max.z)};
  };
  auto sample_rotation = [&](Rng& rng) {
    const double u1 = rng.unit(), u2 = rng.unit(), u3 = rng.unit();
    const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
    return Quat{a * std::sin(kTwoPi * u2), a * std::cos(kTwoPi * u2),
                b * std::sin(kTwoPi * u3), b * std::cos(kTwoPi * u3)}
        .normalized();
  };

  for (int k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, "flying-object", static_cast<std::uint64_t>(k)));
    const std::size_t mesh_idx = rng.pick_index(meshes.size());
    AnimationTrack track;
    track.kind = AnimationTrack::Kind::rigid_keyframes;
    Vec3 pos = sample_point(rng);
    double t = 0.0;
    track.keyframes.push_back({t, Transform{sample_rotation(rng), pos, 1.0}});
    while (t < duration) {
      Vec3 next = sample_point(rng);
      const double dist = norm(next - pos);
      if (dist < 1e-6) continue;  // resample a coincident waypoint
      const double speed = rng.uniform(speed_lo, speed_hi);
      t += dist / speed;
      pos = next;
      track.keyframes.push_back({t, Transform{sample_rotation(rng), pos, 1.0}});
    }
    AssetInstance inst;
    inst.id = first_id + static_cast<std::uint32_t>(k);
    inst.cls = SemanticClass::flying_object;
    inst.asset_name = meshes[mesh_idx].name;
    inst.base_mesh = meshes[mesh_idx].mesh;
    inst.track = std::move(track);
    inst.placement = Transform::identity();
    out.push_back(std::move(inst));
  }
  return out;
}

Scene sample_scene(std::shared_ptr<const Environment> env, const AssetLibrary& library,
                   std::uint64_t seed, const SceneConfig& cfg) {
  if (cfg.human_count_lo > cfg.human_count_hi || cfg.object_count_lo > cfg.object_count_hi) {
    fail(Errc::bad_range, "scene count ranges must satisfy lo <= hi");
  }
  Rng counts_rng(derive_seed(seed, "counts"));
  const int humans = static_cast<int>(counts_rng.uniform_int(cfg.human_count_lo, cfg.human_count_hi));
  const int objects = static_cast<int>(counts_rng.uniform_int(cfg.object_count_lo, cfg.object_count_hi));

  Scene scene;
  scene.environment = env;
  scene.master_seed = seed;
  scene.appearance = randomize_environment(*env, seed, cfg.appearance);
  scene.instances = place_humans(*env, library.humans, humans, seed, cfg.placement);
  auto flyers = spawn_flying_objects(*env, library.objects, objects, seed,
                                     cfg.object_speed_lo, cfg.object_speed_hi,
                                     cfg.placement.duration,
                                     static_cast<std::uint32_t>(scene.instances.size() + 1));
  for (auto& f : flyers) scene.instances.push_back(std::move(f));
  return scene;
}

TriangleMesh instance_mesh_at(const AssetInstance& instance, double t) {
  const double dur = instance.track.duration();
  if (t < 0.0 || t > dur + 1e-12) {
    fail(Errc::out_of_range, "instance time " + std::to_string(t) +
                                 " outside track duration " + std::to_string(dur));
  }
  if (instance.track.kind == AnimationTrack::Kind::mesh_sequence) {
    const auto& frames = instance.track.frame_vertices;
    std::size_t idx = static_cast<std::size_t>(std::llround(t * instance.track.rate));
    if (idx >= frames.size()) idx = frames.size() - 1;
    TriangleMesh m;
    m.name = instance.asset_name;
    m.triangles = instance.track.triangles;
    m.vertices.reserve(frames[idx].size());
    for (const Vec3& v : frames[idx]) m.vertices.push_back(instance.placement.apply(v));
    return m;
  }
  const Transform pose = instance.placement.compose(instance.track.rigid_at(t));
  return transform_mesh(instance.base_mesh, pose);
}

namespace {

nlohmann::ordered_json transform_json(const Transform& t) {
  return {{"rotation", {t.rotation.w, t.rotation.x, t.rotation.y, t.rotation.z}},
          {"translation", {t.translation.x, t.translation.y, t.translation.z}},
          {"scale", t.scale}};
}

}  // namespace

std::string serialize_scene(const Scene& scene) {
  nlohmann::ordered_json j;
  j["seed"] = scene.master_seed;
  j["environment"] = scene.environment->manifest_id;
  j["appearance"] = {{"texture_ids", scene.appearance.texture_ids},
                     {"light_color", scene.appearance.light_color},
                     {"light_intensity", scene.appearance.light_intensity}};
  nlohmann::ordered_json instances = nlohmann::ordered_json::array();
  for (const auto& inst : scene.instances) {
    nlohmann::ordered_json ji;
    ji["id"] = inst.id;
    ji["class"] = inst.cls == SemanticClass::human ? "human" : "flying_object";
    ji["asset"] = inst.asset_name;
    ji["placement"] = transform_json(inst.placement);
    if (inst.track.kind == AnimationTrack::Kind::mesh_sequence) {
      ji["track"] = {{"kind", "mesh_sequence"},
                     {"rate", inst.track.rate},
                     {"frames", inst.track.frame_vertices.size()}};
    } else {
      nlohmann::ordered_json keys = nlohmann::ordered_json::array();
      for (const auto& k : inst.track.keyframes) {
        keys.push_back({{"t", k.t}, {"pose", transform_json(k.pose)}});
      }
      ji["track"] = {{"kind", "rigid_keyframes"}, {"keyframes", std::move(keys)}};
    }
    instances.push_back(std::move(ji));
  }
  j["instances"] = std::move(instances);
  return j.dump(2) + "\n";
}

}  // namespace dynscene
