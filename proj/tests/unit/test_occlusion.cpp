// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "support/occlusion_oracle.hpp"
#include "vscan/error.hpp"

using namespace vscan;

TEST_CASE("grid dimensions from an obb") {
  Obb cube;
  cube.half_extents = {1, 1, 1};
  const VoxelGrid a = grid_from_obb(cube, 4);
  CHECK(a.dims == std::array<int, 3>{4, 4, 4});
  CHECK(a.voxel_edge == 0.5);
  Obb slab;
  slab.half_extents = {2, 1, 1};
  const VoxelGrid b = grid_from_obb(slab, 4);
  CHECK(b.voxel_edge == 1.0);
  CHECK(b.dims == std::array<int, 3>{4, 2, 2});
  Obb odd;
  odd.half_extents = {1, 0.3, 0.01};
  CHECK(grid_from_obb(odd, 10).dims == std::array<int, 3>{10, 3, 1});
  CHECK_THROWS_AS(grid_from_obb(Obb{}, 4), Error);
  CHECK_THROWS_AS(grid_from_obb(cube, 0), Error);
}

TEST_CASE("voxel indexing round trips") {
  Obb o;
  o.center = {1, 2, 3};
  o.half_extents = {1, 0.5, 0.75};
  const VoxelGrid g = grid_from_obb(o, 8);
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const auto [i, j, k] = g.coords(idx);
    CHECK(g.index(i, j, k) == idx);
    CHECK(g.locate(g.voxel_center(i, j, k)) == idx);
  }
  CHECK_FALSE(g.locate({10, 0, 0}));
}

TEST_CASE("empty scene and no points leave everything visible") {
  Obb o;
  o.center = {3, 0, 0};
  o.half_extents = {1, 1, 1};
  VoxelGrid g = grid_from_obb(o, 4);
  classify_voxels(g, SceneGeometry{}, {}, std::span<const Vec3>{});
  CHECK(g.count(VoxelState::VisibleEmpty) == g.size());
}

TEST_CASE("a wall between scanner and grid occludes every empty voxel") {
  Scene s;
  s.objects.push_back(test::make_box_object(1, {1, -10, -10}, {1.1, 10, 10}));
  const SceneGeometry geo = build_scene_geometry(s);
  Obb o;
  o.center = {3, 0, 0};
  o.half_extents = {1, 1, 1};
  VoxelGrid g = grid_from_obb(o, 4);
  const std::vector<Vec3> points = {{2.1, -0.9, -0.9}};
  classify_voxels(g, geo, {}, points);
  CHECK(g.count(VoxelState::Occupied) == 1);
  CHECK(g.states[g.index(0, 0, 0)] == VoxelState::Occupied);
  CHECK(g.count(VoxelState::Occluded) == g.size() - 1);
}

TEST_CASE("box occluder shadows exactly the voxels behind it") {
  // Scanner at the origin, cube occluder around x = 2, grid further out.
  Scene s;
  s.objects.push_back(test::make_box_object(1, {1.8, -0.2, -0.2}, {2.2, 0.2, 0.2}));
  Obb o;
  o.center = {4, 0, 0};
  o.half_extents = {0.5, 1, 1};
  VoxelGrid g = grid_from_obb(o, 16);
  classify_voxels(g, build_scene_geometry(s), {}, std::span<const Vec3>{});
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const Vec3 c = g.voxel_center(i, j, k);
        // Central projection of the centre onto the occluder's front face x = 1.8.
        const double y = c.y * 1.8 / c.x, z = c.z * 1.8 / c.x;
        const double y2 = c.y * 2.2 / c.x, z2 = c.z * 2.2 / c.x;
        const bool front = std::abs(y) <= 0.2 && std::abs(z) <= 0.2;
        const bool back = std::abs(y2) <= 0.2 && std::abs(z2) <= 0.2;
        if (std::abs(std::abs(y) - 0.2) < 1e-9 || std::abs(std::abs(z) - 0.2) < 1e-9) continue;
        const bool shadow = front || back;
        CHECK((g.states[g.index(i, j, k)] == VoxelState::Occluded) == shadow);
      }
}

TEST_CASE("classification matches the march oracle on random box scenes") {
  std::mt19937_64 rng(21);
  std::size_t mismatches = 0, occluded = 0;
  for (int scene = 0; scene < 8; ++scene) {
    auto bs = test::random_box_scene(rng, 4);
    const SceneGeometry geo = build_scene_geometry(bs.scene);
    const SceneObject& target = bs.scene.objects[rng() % bs.scene.objects.size()];
    VoxelGrid g = grid_from_obb(target.obb(), 8);
    std::vector<Vec3> points;
    std::uniform_real_distribution<double> jitter(-1, 1);
    for (int p = 0; p < 30; ++p) {
      points.push_back(target.obb().center + Vec3{jitter(rng), jitter(rng), jitter(rng)} * 0.4);
    }
    classify_voxels(g, geo, bs.origin, points, 2);
    const auto want = test::oracle_classify(g, bs.bodies, bs.origin, points);
    for (std::size_t i = 0; i < want.size(); ++i) {
      if (want[i] != g.states[i]) ++mismatches;
      if (want[i] == VoxelState::Occluded) ++occluded;
    }
  }
  CHECK(mismatches == 0);
  CHECK(occluded > 0);
}

TEST_CASE("sparse encoding") {
  Obb o;
  o.half_extents = {1, 1, 1};
  VoxelGrid g = grid_from_obb(o, 4);
  CHECK(sparse_encode(g).empty());
  g.states[0] = VoxelState::Occupied;
  const auto one = sparse_encode(g);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == SparseVoxel{0, 0, 0, VoxelState::Occupied});

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    VoxelGrid r = grid_from_obb(o, 2 + static_cast<int>(rng() % 7));
    for (auto& s : r.states) s = static_cast<VoxelState>(rng() % 3);
    VoxelGrid copy = r;
    sparse_decode(copy, sparse_encode(r));
    CHECK(copy.states == r.states);
    const auto enc = sparse_encode(r);
    for (std::size_t i = 1; i < enc.size(); ++i)
      CHECK(std::tuple(enc[i - 1].i, enc[i - 1].j, enc[i - 1].k) < std::tuple(enc[i].i, enc[i].j, enc[i].k));
  }
  const SparseVoxel bad{9, 0, 0, VoxelState::Occupied};
  CHECK_THROWS_AS(sparse_decode(g, std::span<const SparseVoxel>(&bad, 1)), Error);
}

TEST_CASE("scene grid over an empty room has no occluded voxels") {
  const Scene room = test::make_box_room({-2, -2, 0}, {2, 2, 2.5});
  const SceneGeometry geo = build_scene_geometry(room);
  ScannerConfig cfg;
  cfg.density_mm_per_10m = 150;
  cfg.vertical_fov_deg = 360;
  cfg.origin = {0, 0, 1.2};
  const PointCloud cloud = scan(geo, cfg, {1});
  const VoxelGrid g = build_scene_grid(room, geo, cloud, 8, cfg.origin);
  CHECK(g.kind == GridFrame::AxisAligned);
  CHECK(g.count(VoxelState::Occupied) > 0);
  // Only voxels buried inside the wall slabs can be hidden.
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    if (g.states[idx] != VoxelState::Occluded) continue;
    const auto [i, j, k] = g.coords(idx);
    const Vec3 c = g.voxel_center(i, j, k);
    const bool inside_room = c.x > -2 && c.x < 2 && c.y > -2 && c.y < 2 && c.z > 0 && c.z < 2.5;
    CHECK_FALSE(inside_room);
  }
}
