// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vscan/geometry.hpp"
#include "vscan/occlusion.hpp"
#include "vscan/panorama.hpp"
#include "vscan/scanner.hpp"
#include "vscan/scene.hpp"

namespace vscan {

enum class PlyFormat { Ascii, BinaryLittleEndian };

// Vertex record of the PLY subset written here. Values are held in double so
// that an ASCII file parsed and written again reproduces its bytes.
struct PlyVertex {
  Vec3 position;
  Vec3 normal;
  Rgb colour;
  bool operator==(const PlyVertex&) const = default;
};

struct PlyCloud {
  PlyFormat format = PlyFormat::BinaryLittleEndian;
  std::vector<PlyVertex> vertices;
};

// Properties x y z nx ny nz (float) and red green blue (uchar). Uncoloured
// points are written white. ASCII values use 6 decimals.
void write_ply(const PointCloud& cloud, std::ostream& out, PlyFormat format);
void write_ply(const PointCloud& cloud, const std::filesystem::path& path, PlyFormat format);
void write_ply(const PlyCloud& cloud, std::ostream& out);
void write_ply(const PlyCloud& cloud, const std::filesystem::path& path);

// Reads files in the subset above. Errors carry the byte offset.
PlyCloud parse_ply(std::string_view bytes);
PlyCloud read_ply_minimal(const std::filesystem::path& path);

// Binary PPM (P6, maxval 255).
void write_ppm(const PanoramaImage& image, const std::filesystem::path& path);
PanoramaImage read_ppm(const std::filesystem::path& path);

// Sparse voxel text file:
//   VSCANVOX 1
//   OBB cx cy cz ax0 ax1 ax2 ay0 ay1 ay2 az0 az1 az2 hx hy hz | AABB x0 y0 z0 x1 y1 z1
//   DIMS nx ny nz EDGE e
//   ORIGIN ox oy oz
//   i j k O|X        (one line per non-empty voxel, lexicographic)
// Reals use 9 significant digits.
void write_voxel_grid(const VoxelGrid& grid, std::ostream& out);
void write_voxel_grid(const VoxelGrid& grid, const std::filesystem::path& path);
VoxelGrid parse_voxel_grid(std::string_view text);
VoxelGrid read_voxel_grid(const std::filesystem::path& path);

struct ManifestObject {
  std::uint32_t id = 0;
  std::string category;
  std::string partial_scan;       // paths are relative to the scene directory
  std::string ground_truth_mesh;
  std::string voxel_grid;
  std::array<Vec3, 8> obb_corners;
};

struct DatasetManifest {
  std::string scene_id;
  std::optional<std::uint64_t> seed;
  std::string style;
  std::string preset;
  ScannerConfig config;
  std::string scene_file;
  std::string furnished_scan;
  std::string empty_scan;
  std::string furnished_panorama;
  std::string empty_panorama;
  std::string scene_voxels;
  std::vector<ManifestObject> objects;
};

std::string serialize_manifest(const DatasetManifest& manifest);
DatasetManifest parse_manifest(std::string_view text);
DatasetManifest read_manifest(const std::filesystem::path& path);

// Metadata recorded in the manifest alongside the artifacts.
struct BundleInfo {
  std::string scene_id;
  std::optional<std::uint64_t> seed;
  std::string style;
  std::string preset;
  ScannerConfig config;
};

// Writes one scene bundle artifact by artifact so that large clouds can be
// released between steps. finish() checks completeness and writes
// manifest.json last.
class BundleWriter {
 public:
  BundleWriter(const std::filesystem::path& out_dir, BundleInfo info, PlyFormat format = PlyFormat::BinaryLittleEndian);

  const std::filesystem::path& scene_dir() const { return dir_; }

  void write_scene(const Scene& scene);
  void write_furnished_scan(const PointCloud& cloud);
  void write_empty_scan(const PointCloud& cloud);
  void write_furnished_panorama(const PanoramaImage& image);
  void write_empty_panorama(const PanoramaImage& image);
  void write_scene_voxels(const VoxelGrid& grid);
  // Requires write_scene first; `object_id` must name a non-static object.
  void write_object(std::uint32_t object_id, const PointCloud& partial, const VoxelGrid& grid);

  // Throws IncompleteInputs naming the first missing artifact.
  DatasetManifest finish();

 private:
  std::filesystem::path dir_;
  BundleInfo info_;
  PlyFormat format_;
  std::optional<Scene> scene_;
  std::set<std::string> written_;
  std::vector<ManifestObject> objects_;
};

struct ObjectOutputs {
  std::uint32_t id = 0;
  PointCloud partial;
  VoxelGrid grid;
};

struct SceneOutputs {
  PointCloud furnished;
  PointCloud empty;
  PanoramaImage furnished_panorama;
  PanoramaImage empty_panorama;
  VoxelGrid scene_grid;
  std::vector<ObjectOutputs> objects;
};

DatasetManifest export_scene_bundle(const Scene& scene, const SceneOutputs& outputs, const std::filesystem::path& out_dir,
                                    const BundleInfo& info, PlyFormat format = PlyFormat::BinaryLittleEndian);

}  // namespace vscan
