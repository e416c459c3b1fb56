// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include "vscan/bvh.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "vscan/error.hpp"

namespace vscan {

std::vector<BvhTriangle> flatten_instances(std::span<const MeshInstance> instances) {
  std::vector<BvhTriangle> out;
  for (const auto& inst : instances) {
    const TriangleMesh& mesh = *inst.mesh;
    std::vector<Vec3> world(mesh.vertices.size());
    for (std::size_t i = 0; i < world.size(); ++i) world[i] = inst.pose.apply(mesh.vertices[i]);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
      const auto& tri = mesh.triangles[t];
      out.push_back({world[tri[0]], world[tri[1]], world[tri[2]], inst.object_id,
                     static_cast<std::uint32_t>(t)});
    }
  }
  return out;
}

namespace {

constexpr int kBins = 16;
// Traversal stacks hold one pending sibling per level.
constexpr int kMaxDepth = 60;

struct BuildRef {
  Aabb box;
  Vec3 centroid;
  std::uint32_t index;
};

double surface_area(const Aabb& b) {
  if (b.is_empty()) return 0.0;
  const Vec3 e = b.extent();
  return 2.0 * (e.x * e.y + e.y * e.z + e.z * e.x);
}

struct Builder {
  std::vector<BuildRef>& refs;
  std::vector<Bvh::Node>& nodes;
  std::uint32_t max_leaf;

  void build(std::uint32_t node_index, std::uint32_t begin, std::uint32_t end, int depth) {
    Aabb box = Aabb::empty();
    Aabb centroid_box = Aabb::empty();
    for (std::uint32_t i = begin; i < end; ++i) {
      box.expand(refs[i].box);
      centroid_box.expand(refs[i].centroid);
    }
    nodes[node_index].box = box;
    const std::uint32_t count = end - begin;

    auto make_leaf = [&] {
      nodes[node_index].first = begin;
      nodes[node_index].count = count;
    };
    if (count <= max_leaf || depth >= kMaxDepth) return make_leaf();

    // Best binned SAH split across the three axes.
    int best_axis = -1;
    int best_bin = 0;
    double best_cost = std::numeric_limits<double>::infinity();
    const Vec3 cext = centroid_box.extent();
    for (int axis = 0; axis < 3; ++axis) {
      if (cext[axis] <= 0.0) continue;
      std::array<Aabb, kBins> bin_box;
      std::array<std::uint32_t, kBins> bin_count{};
      bin_box.fill(Aabb::empty());
      const double scale = kBins / cext[axis];
      for (std::uint32_t i = begin; i < end; ++i) {
        int b = static_cast<int>((refs[i].centroid[axis] - centroid_box.min[axis]) * scale);
        b = std::clamp(b, 0, kBins - 1);
        bin_box[static_cast<std::size_t>(b)].expand(refs[i].box);
        ++bin_count[static_cast<std::size_t>(b)];
      }
      std::array<double, kBins> right_area{};
      std::array<std::uint32_t, kBins> right_count{};
      Aabb acc = Aabb::empty();
      std::uint32_t n = 0;
      for (int b = kBins - 1; b > 0; --b) {
        acc.expand(bin_box[static_cast<std::size_t>(b)]);
        n += bin_count[static_cast<std::size_t>(b)];
        right_area[static_cast<std::size_t>(b)] = surface_area(acc);
        right_count[static_cast<std::size_t>(b)] = n;
      }
      acc = Aabb::empty();
      n = 0;
      for (int b = 0; b < kBins - 1; ++b) {
        acc.expand(bin_box[static_cast<std::size_t>(b)]);
        n += bin_count[static_cast<std::size_t>(b)];
        const auto rc = right_count[static_cast<std::size_t>(b + 1)];
        if (n == 0 || rc == 0) continue;
        const double cost = surface_area(acc) * n + right_area[static_cast<std::size_t>(b + 1)] * rc;
        if (cost < best_cost) {
          best_cost = cost;
          best_axis = axis;
          best_bin = b;
        }
      }
    }

    const double leaf_cost = surface_area(box) * count;
    if (best_axis < 0 || (best_cost >= leaf_cost && count <= 4 * max_leaf)) return make_leaf();

    const double scale = kBins / cext[best_axis];
    const double lo = centroid_box.min[best_axis];
    auto mid_it = std::partition(refs.begin() + begin, refs.begin() + end, [&](const BuildRef& r) {
      int b = static_cast<int>((r.centroid[best_axis] - lo) * scale);
      return std::clamp(b, 0, kBins - 1) <= best_bin;
    });
    auto mid = static_cast<std::uint32_t>(mid_it - refs.begin());
    if (mid == begin || mid == end) mid = begin + count / 2;

    const auto left = static_cast<std::uint32_t>(nodes.size());
    nodes.emplace_back();
    nodes.emplace_back();
    nodes[node_index].first = left;
    nodes[node_index].count = 0;
    build(left, begin, mid, depth + 1);
    build(left + 1, mid, end, depth + 1);
  }
};

struct SlabRay {
  Vec3 origin;
  Vec3 inv;
};

SlabRay make_slab_ray(const Ray& ray) {
  SlabRay s{ray.origin, {}};
  for (int k = 0; k < 3; ++k) {
    double d = ray.direction[k];
    if (std::abs(d) < 1e-30) d = std::copysign(1e-30, d);
    s.inv[k] = 1.0 / d;
  }
  return s;
}

// Entry distance into `b`, or +inf if the ray misses it within [0, t_max].
double slab_entry(const SlabRay& r, const Aabb& b, double t_max) {
  double t0 = 0.0;
  double t1 = t_max;
  for (int k = 0; k < 3; ++k) {
    double tn = (b.min[k] - r.origin[k]) * r.inv[k];
    double tf = (b.max[k] - r.origin[k]) * r.inv[k];
    if (tn > tf) std::swap(tn, tf);
    // Conservative widening against rounding in the slab distances.
    tf *= 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
    t0 = tn > t0 ? tn : t0;
    t1 = tf < t1 ? tf : t1;
    if (t0 > t1) return std::numeric_limits<double>::infinity();
  }
  return t0;
}

}  // namespace

Bvh Bvh::build(std::vector<BvhTriangle> triangles, std::uint32_t max_leaf_size) {
  if (triangles.empty()) fail(ErrorCode::EmptyScene, "cannot build a BVH without triangles");
  std::vector<BuildRef> refs(triangles.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    Aabb b = Aabb::empty();
    b.expand(t.v0);
    b.expand(t.v1);
    b.expand(t.v2);
    refs[i] = {b, b.center(), static_cast<std::uint32_t>(i)};
  }
  Bvh bvh;
  bvh.nodes_.reserve(2 * triangles.size());
  bvh.nodes_.emplace_back();
  Builder builder{refs, bvh.nodes_, std::max<std::uint32_t>(1, max_leaf_size)};
  builder.build(0, 0, static_cast<std::uint32_t>(refs.size()), 0);
  bvh.nodes_.shrink_to_fit();

  bvh.triangles_.reserve(triangles.size());
  for (const auto& r : refs) bvh.triangles_.push_back(triangles[r.index]);
  return bvh;
}

std::optional<RayHit> Bvh::make_hit(const Ray& ray, std::uint32_t index,
                                    const TriangleHit& h) const {
  const BvhTriangle& tri = triangles_[index];
  RayHit hit;
  hit.t = h.t;
  hit.point = ray.origin + ray.direction * h.t;
  Vec3 n = normalized(h.geometric_normal);
  if (dot(n, ray.direction) > 0.0) n = -n;
  hit.normal = n;
  hit.object_id = tri.object_id;
  hit.triangle_id = tri.triangle_id;
  return hit;
}

std::optional<RayHit> Bvh::raycast(const Ray& ray) const {
  const PreparedRay prepared(ray);
  const SlabRay slab = make_slab_ray(ray);
  double best_t = ray.t_max;
  std::uint32_t best_index = std::numeric_limits<std::uint32_t>::max();
  TriangleHit best{};

  std::array<std::uint32_t, 64> stack;
  int top = 0;
  if (slab_entry(slab, nodes_[0].box, best_t) == std::numeric_limits<double>::infinity()) {
    return std::nullopt;
  }
  stack[static_cast<std::size_t>(top++)] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[static_cast<std::size_t>(--top)]];
    if (node.is_leaf()) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const BvhTriangle& tri = triangles_[i];
        auto h = intersect_triangle(prepared, tri.v0, tri.v1, tri.v2);
        if (!h) continue;
        if (h->t < best_t || (h->t == best_t && i < best_index)) {
          best_t = h->t;
          best_index = i;
          best = *h;
        }
      }
      continue;
    }
    const double tl = slab_entry(slab, nodes_[node.first].box, best_t);
    const double tr = slab_entry(slab, nodes_[node.first + 1].box, best_t);
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Push the farther child first so the nearer one is visited next.
    if (tl <= tr) {
      if (tr != inf) stack[static_cast<std::size_t>(top++)] = node.first + 1;
      if (tl != inf) stack[static_cast<std::size_t>(top++)] = node.first;
    } else {
      if (tl != inf) stack[static_cast<std::size_t>(top++)] = node.first;
      if (tr != inf) stack[static_cast<std::size_t>(top++)] = node.first + 1;
    }
  }
  if (best_index == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  return make_hit(ray, best_index, best);
}

bool Bvh::any_hit(const Ray& ray) const {
  const PreparedRay prepared(ray);
  const SlabRay slab = make_slab_ray(ray);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::array<std::uint32_t, 64> stack;
  int top = 0;
  stack[static_cast<std::size_t>(top++)] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[static_cast<std::size_t>(--top)]];
    if (slab_entry(slab, node.box, ray.t_max) == inf) continue;
    if (node.is_leaf()) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        const BvhTriangle& tri = triangles_[i];
        if (intersect_triangle(prepared, tri.v0, tri.v1, tri.v2)) return true;
      }
      continue;
    }
    stack[static_cast<std::size_t>(top++)] = node.first + 1;
    stack[static_cast<std::size_t>(top++)] = node.first;
  }
  return false;
}

std::optional<RayHit> Bvh::raycast_linear(const Ray& ray) const {
  const PreparedRay prepared(ray);
  double best_t = ray.t_max;
  std::uint32_t best_index = std::numeric_limits<std::uint32_t>::max();
  TriangleHit best{};
  for (std::uint32_t i = 0; i < triangles_.size(); ++i) {
    const BvhTriangle& tri = triangles_[i];
    auto h = intersect_triangle(prepared, tri.v0, tri.v1, tri.v2);
    if (h && (h->t < best_t || (h->t == best_t && i < best_index))) {
      best_t = h->t;
      best_index = i;
      best = *h;
    }
  }
  if (best_index == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  return make_hit(ray, best_index, best);
}

}  // namespace vscan
