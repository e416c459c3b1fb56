// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
//
// Randomized box scenes and a ray-march reference for voxel classification.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "support/test_support.hpp"
#include "vscan/occlusion.hpp"

namespace vscan::test {

struct BoxBody {
  Aabb local;  // box in its own frame
  Pose pose;
};

struct BoxScene {
  Scene scene;
  std::vector<BoxBody> bodies;
  Vec3 origin;
};

// Boxes with random size, yaw and position inside a room-sized region; the
// scanner origin is drawn until it lies outside every box.
inline BoxScene random_box_scene(std::mt19937_64& rng, int boxes) {
  std::uniform_real_distribution<double> pos(-2.5, 2.5), size(0.2, 1.2), yaw(0, 6.283185307179586), z(0.0, 1.5);
  BoxScene out;
  for (int b = 0; b < boxes; ++b) {
    const Vec3 half{size(rng) / 2, size(rng) / 2, size(rng) / 2};
    BoxBody body;
    body.local = {-half, half};
    if (b % 3 != 0) body.pose.rotation = Mat3::rotation_z(yaw(rng));
    body.pose.translation = {pos(rng), pos(rng), z(rng)};
    SceneObject o = make_box_object(static_cast<std::uint32_t>(b + 1), -half, half, false, "box");
    o.pose = body.pose;
    out.scene.objects.push_back(o);
    out.bodies.push_back(body);
  }
  for (;;) {
    const Vec3 o{pos(rng), pos(rng), z(rng)};
    bool free = true;
    for (const auto& body : out.bodies) {
      const Vec3 local = body.pose.rotation.transposed() * (o - body.pose.translation);
      Aabb grown = body.local;
      grown.min = grown.min - Vec3{0.05, 0.05, 0.05};
      grown.max = grown.max + Vec3{0.05, 0.05, 0.05};
      if (point_in_box(local, grown)) free = false;
    }
    if (free) {
      out.origin = o;
      return out;
    }
  }
}

// Voxel index of p in the grid's own frame, computed from scratch.
inline std::optional<std::size_t> oracle_locate(const VoxelGrid& g, const Vec3& p) {
  const Vec3 corner = g.min_corner();
  int idx[3];
  for (int a = 0; a < 3; ++a) {
    const double s = dot(p - corner, g.frame.axes[static_cast<std::size_t>(a)]) / g.voxel_edge;
    if (s < 0 || s >= g.dims[static_cast<std::size_t>(a)]) return std::nullopt;
    idx[a] = static_cast<int>(std::floor(s));
  }
  return (static_cast<std::size_t>(idx[0]) * static_cast<std::size_t>(g.dims[1]) + static_cast<std::size_t>(idx[1])) *
             static_cast<std::size_t>(g.dims[2]) +
         static_cast<std::size_t>(idx[2]);
}

// Marches the origin -> voxel-centre segment in `step` metre pieces up to
// |c - o| - edge / 2 and reports whether any piece touches a box.
inline bool march_blocked(const std::vector<BoxBody>& bodies, const Vec3& origin, const Vec3& centre, double edge,
                          double step = 1e-3) {
  const Vec3 d = centre - origin;
  const double length = norm(d);
  const double limit = length - edge / 2;
  if (limit <= 0) return false;
  const Vec3 dir = d / length;
  for (const auto& body : bodies) {
    const Mat3 inv = body.pose.rotation.transposed();
    const Vec3 lo = inv * (origin - body.pose.translation);
    const Vec3 ldir = inv * dir;
    // Cheap reject before the march.
    if (!segment_touches_box(lo, lo + ldir * limit, body.local)) continue;
    for (double t = 0; t < limit; t += step) {
      const double t1 = std::min(limit, t + step);
      if (segment_touches_box(lo + ldir * t, lo + ldir * t1, body.local)) return true;
    }
  }
  return false;
}

inline std::vector<VoxelState> oracle_classify(const VoxelGrid& grid, const std::vector<BoxBody>& bodies,
                                               const Vec3& origin, const std::vector<Vec3>& points) {
  std::vector<VoxelState> out(grid.size(), VoxelState::VisibleEmpty);
  for (const auto& p : points) {
    if (auto idx = oracle_locate(grid, p)) out[*idx] = VoxelState::Occupied;
  }
  for (int i = 0; i < grid.dims[0]; ++i) {
    for (int j = 0; j < grid.dims[1]; ++j) {
      for (int k = 0; k < grid.dims[2]; ++k) {
        const std::size_t idx = grid.index(i, j, k);
        if (out[idx] == VoxelState::Occupied) continue;
        // Voxel centre rebuilt from the min corner.
        Vec3 c = grid.min_corner();
        const int ijk[3] = {i, j, k};
        for (int a = 0; a < 3; ++a) c += grid.frame.axes[static_cast<std::size_t>(a)] * ((ijk[a] + 0.5) * grid.voxel_edge);
        if (march_blocked(bodies, origin, c, grid.voxel_edge)) out[idx] = VoxelState::Occluded;
      }
    }
  }
  return out;
}

}  // namespace vscan::test
