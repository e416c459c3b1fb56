// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "vscan/bvh.hpp"
#include "vscan/error.hpp"

using namespace vscan;

namespace {

std::vector<BvhTriangle> box_triangles(const Vec3& lo, const Vec3& hi, std::uint32_t object_id) {
  const TriangleMesh mesh = make_box_mesh(lo, hi);
  const MeshInstance inst{&mesh, {}, object_id};
  return flatten_instances(std::span<const MeshInstance>(&inst, 1));
}

std::vector<BvhTriangle> random_soup(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(-10, 10), off(-0.5, 0.5);
  std::vector<BvhTriangle> tris;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 c{pos(rng), pos(rng), pos(rng)};
    tris.push_back({c + Vec3{off(rng), off(rng), off(rng)}, c + Vec3{off(rng), off(rng), off(rng)},
                    c + Vec3{off(rng), off(rng), off(rng)}, static_cast<std::uint32_t>(i % 7), static_cast<std::uint32_t>(i)});
  }
  return tris;
}

}  // namespace

TEST_CASE("single triangle builds a leaf root") {
  const Bvh bvh = Bvh::build({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 1, 0}});
  REQUIRE(bvh.nodes().size() == 1);
  CHECK(bvh.nodes()[0].is_leaf());
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(Bvh::build({}), Error);
}

TEST_CASE("root box is the union of the input boxes") {
  auto tris = box_triangles({0, 0, 0}, {1, 1, 1}, 1);
  auto more = box_triangles({5, -2, 3}, {6, -1, 4}, 2);
  tris.insert(tris.end(), more.begin(), more.end());
  const Bvh bvh = Bvh::build(tris);
  CHECK(bvh.bounds().min == Vec3{0, -2, 0});
  CHECK(bvh.bounds().max == Vec3{6, 1, 4});
}

TEST_CASE("nearest hit and range cut-off") {
  const Bvh bvh = Bvh::build(box_triangles({-0.5, -0.5, 4.5}, {0.5, 0.5, 5.5}, 3));
  const auto hit = bvh.raycast({{0, 0, 0}, {0, 0, 1}, 100});
  REQUIRE(hit);
  CHECK(hit->t == 4.5);
  CHECK(hit->object_id == 3);
  CHECK(hit->normal == Vec3{0, 0, -1});
  CHECK_FALSE(bvh.raycast({{0, 0, 0}, {0, 0, 1}, 4}));
  CHECK(bvh.any_hit({{0, 0, 0}, {0, 0, 1}, 100}));
  CHECK_FALSE(bvh.any_hit({{0, 0, 0}, {0, 0, 1}, 4}));
}

TEST_CASE("nested boxes report the outer one") {
  auto tris = box_triangles({-1, -1, 3}, {1, 1, 7}, 1);
  auto inner = box_triangles({-0.5, -0.5, 4.5}, {0.5, 0.5, 5.5}, 2);
  tris.insert(tris.end(), inner.begin(), inner.end());
  const auto hit = Bvh::build(tris).raycast({{0, 0, 0}, {0, 0, 1}, 100});
  REQUIRE(hit);
  CHECK(hit->object_id == 1);
  CHECK(hit->t == 3.0);
}

TEST_CASE("bvh matches the linear scan on a random soup") {
  const Bvh bvh = Bvh::build(random_soup(10000, 11));
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> pos(-12, 12);
  int mismatches = 0, hits = 0;
  for (int i = 0; i < 10000; ++i) {
    const Ray ray{{pos(rng), pos(rng), pos(rng)}, normalized(Vec3{n(rng), n(rng), n(rng)}), 40};
    const auto a = bvh.raycast(ray);
    const auto b = bvh.raycast_linear(ray);
    if (a.has_value() != b.has_value() || (a && (a->t != b->t || a->triangle_id != b->triangle_id))) ++mismatches;
    if (a) ++hits;
    if (bvh.any_hit(ray) != b.has_value()) ++mismatches;
  }
  CHECK(mismatches == 0);
  CHECK(hits > 500);
}

TEST_CASE("leaves respect the size limit and cover every triangle once") {
  const Bvh bvh = Bvh::build(random_soup(3000, 5), 4);
  std::size_t covered = 0;
  for (const auto& node : bvh.nodes()) {
    if (!node.is_leaf()) continue;
    CHECK(node.count <= 4);
    covered += node.count;
  }
  CHECK(covered == 3000);
}

TEST_CASE("flatten_instances applies poses") {
  const TriangleMesh mesh = make_box_mesh({0, 0, 0}, {1, 1, 1});
  Pose pose;
  pose.translation = {10, 0, 0};
  const MeshInstance inst{&mesh, pose, 9};
  const auto tris = flatten_instances(std::span<const MeshInstance>(&inst, 1));
  REQUIRE(tris.size() == 12);
  for (const auto& t : tris) {
    CHECK(t.object_id == 9);
    CHECK(t.v0.x >= 10);
  }
  CHECK(tris[5].triangle_id == 5);
}
