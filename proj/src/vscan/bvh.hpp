// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vscan/geometry.hpp"

namespace vscan {

// World-space triangle tagged with its source object and its index within
// that object's mesh.
struct BvhTriangle {
  Vec3 v0;
  Vec3 v1;
  Vec3 v2;
  std::uint32_t object_id = 0;
  std::uint32_t triangle_id = 0;
};

struct MeshInstance {
  const TriangleMesh* mesh = nullptr;
  Pose pose;
  std::uint32_t object_id = 0;
};

std::vector<BvhTriangle> flatten_instances(std::span<const MeshInstance> instances);

// Binned-SAH bounding volume hierarchy over a triangle soup. Immutable after
// build; concurrent queries are safe.
class Bvh {
 public:
  struct Node {
    Aabb box;
    std::uint32_t first = 0;  // leaf: first triangle; inner: left child (right = first + 1)
    std::uint32_t count = 0;  // > 0 for leaves
    bool is_leaf() const { return count > 0; }
  };

  // Throws EmptyScene when `triangles` is empty.
  static Bvh build(std::vector<BvhTriangle> triangles, std::uint32_t max_leaf_size = 4);

  // Nearest hit with t in (kRayEpsilon, ray.t_max]. Ties on t resolve to the
  // lowest triangle index so results match `raycast_linear` exactly.
  std::optional<RayHit> raycast(const Ray& ray) const;

  // True when any triangle is hit with t in (kRayEpsilon, ray.t_max].
  bool any_hit(const Ray& ray) const;

  // Reference nearest-hit query over every triangle.
  std::optional<RayHit> raycast_linear(const Ray& ray) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  // Triangles in leaf order.
  const std::vector<BvhTriangle>& triangles() const { return triangles_; }
  const Aabb& bounds() const { return nodes_.front().box; }

 private:
  std::optional<RayHit> make_hit(const Ray& ray, std::uint32_t index, const TriangleHit& h) const;

  std::vector<Node> nodes_;
  std::vector<BvhTriangle> triangles_;
};

}  // namespace vscan
