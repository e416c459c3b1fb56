// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vscan/geometry.hpp"
#include "vscan/scanner.hpp"
#include "vscan/scene.hpp"
#include "vscan/scene_geometry.hpp"

namespace vscan {

enum class VoxelState : std::uint8_t { VisibleEmpty = 0, Occupied = 1, Occluded = 2 };

enum class GridFrame : std::uint8_t { Oriented, AxisAligned };

// Cubic voxel grid centred on a box frame. For axis-aligned grids the frame
// axes are the world axes and `frame.half_extents` is half the AABB size.
// Voxel (i, j, k) is stored at (i * ny + j) * nz + k.
struct VoxelGrid {
  GridFrame kind = GridFrame::Oriented;
  Obb frame;
  std::array<int, 3> dims{1, 1, 1};
  double voxel_edge = 1.0;
  Vec3 scan_origin;
  std::vector<VoxelState> states;

  std::size_t size() const {
    return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(dims[2]);
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(dims[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(dims[2]) +
           static_cast<std::size_t>(k);
  }
  std::array<int, 3> coords(std::size_t index) const;
  // Corner of voxel (0, 0, 0) furthest along the negative axes.
  Vec3 min_corner() const;
  Vec3 voxel_center(int i, int j, int k) const;
  // Voxel holding p; faces belong to the voxel on their positive side.
  std::optional<std::size_t> locate(const Vec3& p) const;
  Aabb frame_aabb() const { return {frame.center - frame.half_extents, frame.center + frame.half_extents}; }
  std::size_t count(VoxelState s) const;
};

inline constexpr int kDefaultObjectVoxelResolution = 32;

// voxel_edge = 2 * max(half_extents) / resolution, dims = ceil(extent / edge).
VoxelGrid grid_from_obb(const Obb& obb, int resolution);
VoxelGrid grid_from_aabb(const Aabb& box, int resolution);

// Occupied if any point falls in the voxel; otherwise Occluded if the scene is
// hit before |c - origin| - edge/2 on the segment to the voxel centre c;
// otherwise VisibleEmpty.
void classify_voxels(VoxelGrid& grid, const SceneGeometry& scene, const Vec3& scanner_origin,
                     std::span<const Vec3> points, unsigned threads = 0);
void classify_voxels(VoxelGrid& grid, const SceneGeometry& scene, const Vec3& scanner_origin,
                     const PointCloud& points, unsigned threads = 0);

// Axis-aligned grid over the scene bounds, classified with the full cloud.
VoxelGrid build_scene_grid(const Scene& scene, const SceneGeometry& geometry, const PointCloud& cloud,
                           int coarse_resolution, const Vec3& scanner_origin, unsigned threads = 0);

struct SparseVoxel {
  int i = 0;
  int j = 0;
  int k = 0;
  VoxelState state = VoxelState::Occupied;
  bool operator==(const SparseVoxel&) const = default;
};

// Non-VisibleEmpty voxels in (i, j, k) lexicographic order.
std::vector<SparseVoxel> sparse_encode(const VoxelGrid& grid);
// Refills `grid.states` from records; unspecified voxels become VisibleEmpty.
void sparse_decode(VoxelGrid& grid, std::span<const SparseVoxel> records);

}  // namespace vscan
