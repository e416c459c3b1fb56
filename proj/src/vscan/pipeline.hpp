// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vscan/dataset_io.hpp"
#include "vscan/procgen.hpp"
#include "vscan/scanner.hpp"
#include "vscan/scene.hpp"

namespace vscan {

using ProgressFn = std::function<void(const std::string&)>;

struct PipelineOptions {
  std::string preset;  // recorded in the manifest
  ScannerConfig config;
  bool auto_origin = true;  // place the scanner with auto_scan_setup
  bool colour = true;
  int object_voxel_resolution = kDefaultObjectVoxelResolution;
  int scene_voxel_resolution = 8;
  int panorama_width = 2048;
  double isolation_offset = 0.01;  // metres added to each OBB when isolating
  unsigned threads = 0;
  PlyFormat ply_format = PlyFormat::BinaryLittleEndian;
  ProgressFn progress;
};

struct PipelineSummary {
  std::size_t points = 0;   // furnished scan
  std::size_t objects = 0;  // non-static objects exported
  double occluded_fraction = 0.0;  // occluded voxels over all object-grid voxels
  DatasetManifest manifest;
};

// Scan, render, colour, isolate, voxelize and export one scene bundle to
// out_dir/scene_id. The furnished cloud is released before the empty scene
// is scanned.
PipelineSummary run_scan_pipeline(const Scene& scene, const PipelineOptions& options,
                                  const std::filesystem::path& out_dir, const std::string& scene_id,
                                  std::optional<std::uint64_t> scene_seed = std::nullopt);

// Master seed of scene m in a batch seeded with `seed`.
std::uint64_t scene_seed(std::uint64_t seed, std::uint64_t m);
std::string scene_id_for(std::uint64_t m);

// Writes out_dir/scene_NNNN/scene.json for m in [0, count).
std::vector<std::filesystem::path> generate_scenes(const StyleConfig& style, std::uint64_t seed, std::uint64_t count,
                                                   const std::filesystem::path& out_dir);

struct DatasetSceneResult {
  std::string scene_id;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::size_t points = 0;
  std::size_t objects = 0;
};

struct DatasetResult {
  std::vector<DatasetSceneResult> scenes;
  std::size_t failed() const;
};

// Generates and scans `count` scenes, up to `jobs` at a time, then writes
// out_dir/dataset_manifest.json. Output bytes do not depend on `jobs`.
// The scanner seed of each scene derives from its master seed; the scanner
// origin is always placed automatically.
DatasetResult run_dataset(const StyleConfig& style, const PipelineOptions& options, std::uint64_t seed,
                          std::uint64_t count, const std::filesystem::path& out_dir, unsigned jobs);

// --jobs, else VSCAN_JOBS, else hardware concurrency.
unsigned resolve_jobs(unsigned requested);

}  // namespace vscan
