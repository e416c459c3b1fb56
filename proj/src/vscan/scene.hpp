// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vscan/geometry.hpp"
#include "vscan/scanner.hpp"
#include "vscan/scene_geometry.hpp"

namespace vscan {

// wall, floor, ceiling, door and window are structural and always static.
bool is_structural_category(std::string_view category);

struct SceneObject {
  std::uint32_t id = 0;
  std::string name;
  std::string category;
  bool is_static = false;
  Rgb albedo;
  Pose pose;
  std::shared_ptr<const TriangleMesh> mesh;
  // Mesh file the object was loaded from, relative to the scene file. Empty
  // for inline meshes.
  std::string mesh_file;

  Obb obb() const { return compute_obb(*mesh, pose); }
  Aabb world_aabb() const { return compute_aabb(*mesh, pose); }
};

struct Scene {
  std::vector<SceneObject> objects;
  std::optional<std::uint64_t> generation_seed;
  std::optional<std::string> style_name;

  const SceneObject* find(std::uint32_t id) const;
  // Throws EmptyScene when there are no objects.
  Aabb bounds() const;
};

inline constexpr int kSceneFormatVersion = 1;

struct SceneLoadReport {
  std::size_t dropped_degenerate = 0;
};

// Errors: ParseError (with line or field), MissingMesh, DuplicateId.
Scene load_scene(const std::filesystem::path& path, SceneLoadReport* report = nullptr);
Scene parse_scene(std::string_view text, const std::filesystem::path& base_dir,
                  SceneLoadReport* report = nullptr);

// Serializes with inline meshes unless `keep_mesh_refs` is set and the object
// came from a mesh file.
std::string serialize_scene(const Scene& scene, bool keep_mesh_refs = false);
void save_scene(const Scene& scene, const std::filesystem::path& path, bool keep_mesh_refs = false);

// Structural equality: ids, names, categories, flags, albedo, poses and mesh
// contents.
bool scenes_equal(const Scene& a, const Scene& b);

SceneGeometry build_scene_geometry(const Scene& scene);

// Points lying in the object's OBB grown by `offset` metres, in input order.
PointCloud isolate_object_points(const PointCloud& cloud, const SceneObject& object, double offset);

Scene strip_non_static(const Scene& scene);

// World-space mesh of the object.
TriangleMesh posed_mesh(const SceneObject& object);

struct GroundTruthRecord {
  std::filesystem::path mesh_path;
  std::array<Vec3, 8> obb_corners;
};

GroundTruthRecord export_ground_truth(const SceneObject& object, const std::filesystem::path& path);

}  // namespace vscan
