// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/occlusion.hpp"

#include <algorithm>
#include <cmath>

#include "vscan/error.hpp"
#include "vscan/parallel.hpp"

namespace vscan {

std::array<int, 3> VoxelGrid::coords(std::size_t index) const {
  const auto nz = static_cast<std::size_t>(dims[2]);
  const auto ny = static_cast<std::size_t>(dims[1]);
  return {static_cast<int>(index / (ny * nz)), static_cast<int>((index / nz) % ny), static_cast<int>(index % nz)};
}

Vec3 VoxelGrid::min_corner() const {
  Vec3 c = frame.center;
  for (int a = 0; a < 3; ++a) c += frame.axes[static_cast<std::size_t>(a)] * (-0.5 * dims[static_cast<std::size_t>(a)] * voxel_edge);
  return c;
}

Vec3 VoxelGrid::voxel_center(int i, int j, int k) const {
  const int idx[3] = {i, j, k};
  Vec3 c = frame.center;
  for (int a = 0; a < 3; ++a) {
    const double offset = (idx[a] + 0.5 - 0.5 * dims[static_cast<std::size_t>(a)]) * voxel_edge;
    c += frame.axes[static_cast<std::size_t>(a)] * offset;
  }
  return c;
}

std::optional<std::size_t> VoxelGrid::locate(const Vec3& p) const {
  const Vec3 rel = p - frame.center;
  int idx[3];
  for (int a = 0; a < 3; ++a) {
    const double local = dot(rel, frame.axes[static_cast<std::size_t>(a)]) / voxel_edge + 0.5 * dims[static_cast<std::size_t>(a)];
    const double f = std::floor(local);
    if (!(f >= 0.0 && f < dims[static_cast<std::size_t>(a)])) return std::nullopt;
    idx[a] = static_cast<int>(f);
  }
  return index(idx[0], idx[1], idx[2]);
}

std::size_t VoxelGrid::count(VoxelState s) const {
  return static_cast<std::size_t>(std::count(states.begin(), states.end(), s));
}

namespace {

VoxelGrid make_grid(const Obb& frame, int resolution, GridFrame kind) {
  if (resolution < 1) fail(ErrorCode::InvalidArgument, "voxel resolution must be >= 1");
  const double longest = std::max({frame.half_extents.x, frame.half_extents.y, frame.half_extents.z});
  if (!(longest > 0.0)) fail(ErrorCode::DegenerateObb, "cannot voxelize a box with zero extent");
  VoxelGrid grid;
  grid.kind = kind;
  grid.frame = frame;
  grid.voxel_edge = 2.0 * longest / resolution;
  for (int a = 0; a < 3; ++a) {
    const double cells = 2.0 * frame.half_extents[a] / grid.voxel_edge;
    // Tolerance absorbs rounding in exact multiples (2h / edge == n).
    grid.dims[static_cast<std::size_t>(a)] = std::max(1, static_cast<int>(std::ceil(cells - 1e-9)));
  }
  grid.states.assign(grid.size(), VoxelState::VisibleEmpty);
  return grid;
}

}  // namespace

VoxelGrid grid_from_obb(const Obb& obb, int resolution) { return make_grid(obb, resolution, GridFrame::Oriented); }

VoxelGrid grid_from_aabb(const Aabb& box, int resolution) {
  Obb frame;
  frame.center = box.center();
  frame.half_extents = box.extent() * 0.5;
  return make_grid(frame, resolution, GridFrame::AxisAligned);
}

namespace {

// Ray pass over every voxel not already marked Occupied.
void trace_unoccupied(VoxelGrid& grid, const SceneGeometry& scene, const Vec3& scanner_origin, unsigned threads) {
  const double half_edge = grid.voxel_edge / 2.0;
  parallel_for(
      grid.size(), threads,
      [&](std::size_t index) {
        if (grid.states[index] == VoxelState::Occupied) return;
        const auto [i, j, k] = grid.coords(index);
        const Vec3 to_centre = grid.voxel_center(i, j, k) - scanner_origin;
        const double length = norm(to_centre);
        const double limit = length - half_edge;
        if (!(limit > kRayEpsilon)) return;
        // Hits must be strictly closer than the limit.
        const Ray ray{scanner_origin, to_centre / length, std::nextafter(limit, 0.0)};
        if (scene.any_hit(ray)) grid.states[index] = VoxelState::Occluded;
      },
      256);
}

}  // namespace

void classify_voxels(VoxelGrid& grid, const SceneGeometry& scene, const Vec3& scanner_origin,
                     std::span<const Vec3> points, unsigned threads) {
  grid.scan_origin = scanner_origin;
  grid.states.assign(grid.size(), VoxelState::VisibleEmpty);
  for (const auto& p : points) {
    if (auto idx = grid.locate(p)) grid.states[*idx] = VoxelState::Occupied;
  }
  trace_unoccupied(grid, scene, scanner_origin, threads);
}

void classify_voxels(VoxelGrid& grid, const SceneGeometry& scene, const Vec3& scanner_origin,
                     const PointCloud& points, unsigned threads) {
  grid.scan_origin = scanner_origin;
  grid.states.assign(grid.size(), VoxelState::VisibleEmpty);
  for (const auto& p : points.points) {
    if (auto idx = grid.locate(p.position)) grid.states[*idx] = VoxelState::Occupied;
  }
  trace_unoccupied(grid, scene, scanner_origin, threads);
}

VoxelGrid build_scene_grid(const Scene& scene, const SceneGeometry& geometry, const PointCloud& cloud,
                           int coarse_resolution, const Vec3& scanner_origin, unsigned threads) {
  if (scene.objects.empty()) fail(ErrorCode::EmptyScene, "scene grid needs a non-empty scene");
  VoxelGrid grid = grid_from_aabb(scene.bounds(), coarse_resolution);
  classify_voxels(grid, geometry, scanner_origin, cloud, threads);
  return grid;
}

std::vector<SparseVoxel> sparse_encode(const VoxelGrid& grid) {
  std::vector<SparseVoxel> out;
  for (std::size_t idx = 0; idx < grid.states.size(); ++idx) {
    if (grid.states[idx] == VoxelState::VisibleEmpty) continue;
    const auto [i, j, k] = grid.coords(idx);
    out.push_back({i, j, k, grid.states[idx]});
  }
  return out;
}

void sparse_decode(VoxelGrid& grid, std::span<const SparseVoxel> records) {
  grid.states.assign(grid.size(), VoxelState::VisibleEmpty);
  for (const auto& r : records) {
    if (r.i < 0 || r.j < 0 || r.k < 0 || r.i >= grid.dims[0] || r.j >= grid.dims[1] || r.k >= grid.dims[2]) {
      fail(ErrorCode::ParseError, "sparse voxel index outside the grid");
    }
    grid.states[grid.index(r.i, r.j, r.k)] = r.state;
  }
}

}  // namespace vscan
