// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/test_support.hpp"
#include "vscan/error.hpp"
#include "vscan/panorama.hpp"

using namespace vscan;

namespace {

constexpr double kPi = std::numbers::pi;

ScannerConfig small_config(double density = 400, double fov = 360) {
  ScannerConfig c;
  c.density_mm_per_10m = density;
  c.vertical_fov_deg = fov;
  c.max_range_m = 100;
  return c;
}

PanoramaImage blank(int w, int h, Rgb fill = {}) {
  PanoramaImage p;
  p.width = w;
  p.height = h;
  p.pixels.resize(static_cast<std::size_t>(w * h * 3));
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) p.set(c, r, fill);
  return p;
}

}  // namespace

TEST_CASE("direction to uv endpoints") {
  auto [u0, v0] = direction_to_uv(0, -kPi / 2, -kPi / 2, kPi / 2);
  CHECK(u0 == 0.0);
  CHECK(v0 == 0.0);
  auto [u1, v1] = direction_to_uv(kPi, kPi / 2, -kPi / 2, kPi / 2);
  CHECK(u1 == 0.5);
  CHECK(v1 == 1.0);
  auto [uw, vw] = direction_to_uv(2 * kPi - 1e-15, 0, -kPi / 2, kPi / 2);
  CHECK(uw >= 0.0);
  CHECK(uw < 1.0);
  CHECK(uv_to_pixel(uw, vw, 64, 32).first == 63);
  CHECK(direction_to_uv(2 * kPi, 0, -1, 1).first == 0.0);
  CHECK(direction_to_uv(-kPi / 2, 0, -1, 1).first == 0.75);
  CHECK_THROWS_AS(direction_to_uv(0, 1.5, -1, 1), Error);
}

TEST_CASE("uv to pixel: v = 1 is the top row, v = 0 the bottom") {
  CHECK(uv_to_pixel(0, 1, 8, 4) == std::pair(0, 0));
  CHECK(uv_to_pixel(0, 0, 8, 4) == std::pair(0, 3));
  CHECK(uv_to_pixel(0.999999, 0.5, 8, 4) == std::pair(7, 2));
}

TEST_CASE("uniform one-pixel panorama colours every point") {
  const Scene room = test::make_box_room({-3, -3, -3}, {3, 3, 3});
  PointCloud cloud = scan(build_scene_geometry(room), small_config(), {1});
  REQUIRE_FALSE(cloud.points.empty());
  const PanoramaImage pano = blank(1, 1, {12, 34, 56});
  const PointCloud out = colour_points(cloud, pano, 2);
  for (const auto& p : out.points) {
    CHECK(p.has_colour);
    CHECK(p.colour == Rgb{12, 34, 56});
  }
}

TEST_CASE("horizontal gradient reproduces the azimuth column") {
  const Scene room = test::make_box_room({-3, -3, -3}, {3, 3, 3});
  const ScannerConfig cfg = small_config(300);
  const PointCloud cloud = scan(build_scene_geometry(room), cfg, {1});
  const int w = 251;
  PanoramaImage pano = blank(w, 1);
  for (int c = 0; c < w; ++c) pano.set(c, 0, {static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(c / 2), 0});
  const PointCloud out = colour_points(cloud, pano);
  const ScanPattern pattern(cfg);
  int checked = 0;
  for (const auto& p : out.points) {
    const std::uint64_t n = pattern.rings()[p.ring].azimuth_count;
    const std::uint64_t scaled = p.azimuth * static_cast<std::uint64_t>(w);
    if (scaled % n == 0 && p.azimuth != 0) continue;  // exact column boundary
    const int col = static_cast<int>(scaled / n);
    CHECK(p.colour.r == col);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("lowest ring samples the bottom row") {
  const Scene room = test::make_box_room({-3, -3, -3}, {3, 3, 3});
  const ScannerConfig cfg = small_config(600, 300);
  const PointCloud cloud = scan(build_scene_geometry(room), cfg, {1});
  PanoramaImage pano = blank(8, 4, {0, 0, 0});
  pano.theta_min = cfg.min_elevation();
  for (int c = 0; c < 8; ++c) pano.set(c, 3, {255, 0, 0});
  const PointCloud out = colour_points(cloud, pano);
  int lowest = 0;
  for (const auto& p : out.points) {
    if (p.ring != 0) continue;
    CHECK(p.colour == Rgb{255, 0, 0});
    ++lowest;
  }
  CHECK(lowest > 0);
}

TEST_CASE("colouring requires matching origins") {
  Scene s;
  s.objects.push_back(test::make_box_object(1, {2, -1, -1}, {3, 1, 1}));
  const PointCloud cloud = scan(build_scene_geometry(s), small_config(), {1});
  PanoramaImage pano = blank(4, 2);
  pano.origin = {0, 0, 0.5};
  try {
    colour_points(cloud, pano);
    FAIL("expected MismatchedOrigin");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MismatchedOrigin);
  }
}

TEST_CASE("empty scene renders background") {
  RenderOptions opts;
  opts.background = {1, 2, 3};
  const PanoramaImage p = render_panorama(SceneGeometry{}, {}, {}, 16, opts);
  CHECK(p.width == 16);
  CHECK(p.height == 8);
  for (int r = 0; r < p.height; ++r)
    for (int c = 0; c < p.width; ++c) CHECK(p.at(c, r) == Rgb{1, 2, 3});
}

TEST_CASE("ambient-only enclosure renders its albedo") {
  // A closed box around the origin.
  Scene s;
  s.objects.push_back(test::make_box_object(1, {-1, -1, -1}, {1, 1, 1}, true, "wall", {255, 0, 0}));
  ShadingConfig shading;
  shading.ambient = 1;
  shading.light_intensity = 0;
  const PanoramaImage p = render_panorama(build_scene_geometry(s), {}, shading, 32);
  for (int r = 0; r < p.height; ++r)
    for (int c = 0; c < p.width; ++c) CHECK(p.at(c, r) == Rgb{255, 0, 0});
}

TEST_CASE("cube room pixels show the analytically expected wall") {
  const Scene room = test::make_box_room({-2, -2, -2}, {2, 2, 2});
  const ShadingConfig shading;
  const PanoramaImage p = render_panorama(build_scene_geometry(room), {}, shading, 512);
  std::mt19937_64 rng(2);
  int sampled = 0;
  while (sampled < 64) {
    const int col = static_cast<int>(rng() % static_cast<std::uint64_t>(p.width));
    const int row = static_cast<int>(rng() % static_cast<std::uint64_t>(p.height));
    const double theta = -kPi / 2 + (1.0 - (row + 0.5) / p.height) * kPi;
    const double phi = 2 * kPi * (col + 0.5) / p.width;
    const Vec3 d{std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), std::sin(theta)};
    std::array<double, 3> mag{std::abs(d.x), std::abs(d.y), std::abs(d.z)};
    const int axis = static_cast<int>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    std::array<double, 3> sorted = mag;
    std::sort(sorted.begin(), sorted.end());
    if (sorted[2] - sorted[1] < 1e-3) continue;  // near a room edge
    Rgb albedo;
    Vec3 inward;
    if (axis == 0) {
      albedo = d.x < 0 ? Rgb{200, 0, 0} : Rgb{0, 200, 0};
      inward = {d.x < 0 ? 1.0 : -1.0, 0, 0};
    } else if (axis == 1) {
      albedo = d.y < 0 ? Rgb{0, 0, 200} : Rgb{200, 200, 0};
      inward = {0, d.y < 0 ? 1.0 : -1.0, 0};
    } else {
      albedo = {200, 200, 200};
      inward = {0, 0, d.z < 0 ? 1.0 : -1.0};
    }
    const double f = shading.ambient + shading.light_intensity * std::max(0.0, -dot(inward, shading.light_direction));
    auto ch = [&](std::uint8_t a) { return static_cast<std::uint8_t>(std::floor(a * f + 0.5)); };
    CHECK(p.at(col, row) == Rgb{ch(albedo.r), ch(albedo.g), ch(albedo.b)});
    ++sampled;
  }
}

TEST_CASE("restricted vertical range keeps square pixels") {
  RenderOptions opts;
  opts.theta_min = 0;
  const PanoramaImage p = render_panorama(SceneGeometry{}, {}, {}, 64, opts);
  CHECK(p.height == 16);
  CHECK_THROWS_AS(render_panorama(SceneGeometry{}, {}, {}, 7), Error);
}
