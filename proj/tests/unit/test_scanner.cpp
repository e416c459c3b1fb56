// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "support/test_support.hpp"
#include "vscan/config_io.hpp"
#include "vscan/error.hpp"
#include "vscan/scanner.hpp"

using namespace vscan;

namespace {

constexpr double kPi = std::numbers::pi;

ScannerConfig config_with(double density, double fov) {
  ScannerConfig c;
  c.density_mm_per_10m = density;
  c.vertical_fov_deg = fov;
  c.max_range_m = 100;
  return c;
}

bool throws_code(ErrorCode code, auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("angular step from density") {
  CHECK(angular_step_from_density(6) == doctest::Approx(0.0006).epsilon(1e-15));
  CHECK(angular_step_from_density(10000 * kPi / 2) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { angular_step_from_density(0); }));
}

TEST_CASE("adjacent vectors land 1 mm apart on a plane at 10 m for d_s = 1") {
  const ScanPattern pattern(config_with(1, 180));
  REQUIRE(pattern.rings()[0].elevation == 0.0);
  // Intersections of two neighbouring vectors with the plane x = 10.
  auto on_plane = [](const Vec3& d) { return d * (10.0 / d.x); };
  const Vec3 a = on_plane(pattern.vector(0, 0).direction);
  const Vec3 b = on_plane(pattern.vector(0, 1).direction);
  const Vec3 c = on_plane(pattern.vector(1, 0).direction);
  CHECK(std::abs(norm(b - a) - 1e-3) <= 1e-7);
  CHECK(std::abs(norm(c - a) - 1e-3) <= 1e-7);
}

TEST_CASE("full sphere at a quarter-turn step gives the six axis directions") {
  const auto vecs = generate_scan_vectors(config_with(10000 * kPi / 2, 360));
  REQUIRE(vecs.size() == 6);
  std::vector<Vec3> want = {{0, 0, -1}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}};
  for (std::size_t i = 0; i < 6; ++i) CHECK(vecs[i].direction == want[i]);
}

TEST_CASE("ring table for V = 270 and a 45 degree step") {
  const ScanPattern pattern(config_with(10000 * kPi / 4, 270));
  // Independent enumeration of the ring formulas.
  const double step = kPi / 4, theta_min = -kPi / 4;
  std::vector<std::pair<double, std::uint32_t>> expect;
  for (int i = 0; theta_min + i * step <= kPi / 2 + 1e-12; ++i) {
    const double th = theta_min + i * step;
    expect.push_back({th, static_cast<std::uint32_t>(std::max(1.0, std::round(2 * kPi * std::cos(th) / step)))});
  }
  REQUIRE(pattern.rings().size() == 4);
  REQUIRE(expect.size() == 4);
  const std::uint32_t counts[] = {6, 8, 6, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(pattern.rings()[i].elevation - expect[i].first) < 1e-12);
    CHECK(pattern.rings()[i].azimuth_count == expect[i].second);
    CHECK(pattern.rings()[i].azimuth_count == counts[i]);
  }
  CHECK(pattern.vector_count() == 21);
}

TEST_CASE("minimum elevation follows the vertical coverage") {
  for (double v : {360.0, 270.0, 180.0, 300.0}) {
    const ScanPattern p(config_with(100, v));
    CHECK(std::abs(p.min_elevation() - (90.0 - v / 2) * kPi / 180) <= 1e-12);
  }
  const auto upper = generate_scan_vectors(config_with(500, 180));
  CHECK(upper.front().elevation == 0.0);
  for (const auto& v : upper) CHECK(v.direction.z >= 0.0);
}

TEST_CASE("vectors are unit length and in (ring, azimuth) order") {
  const auto vecs = generate_scan_vectors(config_with(300, 300));
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    CHECK(std::abs(norm(vecs[i].direction) - 1.0) < 1e-12);
    if (i) CHECK(std::pair(vecs[i - 1].ring, vecs[i - 1].azimuth) < std::pair(vecs[i].ring, vecs[i].azimuth));
  }
}

TEST_CASE("vector budget") {
  CHECK(throws_code(ErrorCode::VectorBudgetExceeded, [] { ScanPattern(config_with(1, 360), 1000); }));
  CHECK_NOTHROW(ScanPattern(config_with(10000 * kPi / 2, 360), 6));
  CHECK(throws_code(ErrorCode::VectorBudgetExceeded, [] { ScanPattern(config_with(10000 * kPi / 2, 360), 5); }));
}

TEST_CASE("config validation") {
  ScannerConfig c;
  CHECK_NOTHROW(c.validate());
  c.vertical_fov_deg = 361;
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { c.validate(); }));
  c = {};
  c.max_range_m = 0;
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { c.validate(); }));
  c = {};
  c.system_error_mm = -1;
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { c.validate(); }));
}

TEST_CASE("noise model") {
  ScannerConfig c;
  RngStream rng(1);
  CHECK(apply_noise(10, c, rng) == 10.0);
  c.distance_error_fraction = 0.01;
  CHECK(apply_noise(10, c, rng) == 10.1);
  c.distance_error_fraction = 0;
  c.system_error_mm = 2;
  RngStream a(3), b(3);
  CHECK(apply_noise(5, c, a) == apply_noise(5, c, b));
  CHECK(apply_noise(5, c, a) != 5.0);
}

TEST_CASE("presets match the device table") {
  REQUIRE(scanner_presets().size() == 4);
  const auto& p30 = find_preset("leica_p30").config;
  CHECK(p30.max_range_m == 270);
  CHECK(p30.system_error_mm == 1.2);
  CHECK(p30.distance_error_fraction == doctest::Approx(10e-6));
  CHECK(find_preset("blk360").config.max_range_m == 45);
  CHECK(find_preset("navvis_vlx").config.max_range_m == 50);
  CHECK(throws_code(ErrorCode::UnknownPreset, [] { find_preset("bogus"); }));
  for (const auto& p : scanner_presets()) CHECK_NOTHROW(p.config.validate());
}

TEST_CASE("distance error strings") {
  CHECK(parse_distance_error("0.01") == 0.01);
  CHECK(parse_distance_error("1%") == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(parse_distance_error("10ppm") == doctest::Approx(1e-5).epsilon(1e-15));
  CHECK(parse_distance_error(" 10 ppm ") == doctest::Approx(1e-5).epsilon(1e-15));
  CHECK(throws_code(ErrorCode::ParseError, [] { parse_distance_error("ten"); }));
  CHECK(throws_code(ErrorCode::ParseError, [] { parse_distance_error("%"); }));
}

TEST_CASE("empty scene scans to an empty cloud") {
  const PointCloud cloud = scan(SceneGeometry{}, config_with(100, 360));
  CHECK(cloud.points.empty());
}

TEST_CASE("zero-noise cube room: every point on a wall, one point per vector") {
  const Scene room = test::make_box_room({-5, -5, -5}, {5, 5, 5});
  const SceneGeometry geo = build_scene_geometry(room);
  const ScannerConfig cfg = config_with(200, 360);
  const PointCloud cloud = scan(geo, cfg, {2});
  CHECK(cloud.points.size() == ScanPattern(cfg).vector_count());
  std::size_t off_plane = 0;
  for (const auto& p : cloud.points) {
    double best = INFINITY;
    for (int a = 0; a < 3; ++a) best = std::min(best, 5.0 - std::abs(p.position[a]));
    if (best > 1e-9) ++off_plane;
  }
  CHECK(off_plane == 0);
}

TEST_CASE("range limit, thread independence and labels") {
  Scene s;
  s.objects.push_back(test::make_box_object(4, {2, -1, -1}, {3, 1, 1}));
  s.objects.push_back(test::make_box_object(5, {-30, -1, -1}, {-29, 1, 1}));
  const SceneGeometry geo = build_scene_geometry(s);
  ScannerConfig cfg = config_with(100, 360);
  cfg.max_range_m = 10;
  cfg.system_error_mm = 3;
  cfg.seed = 9;
  const PointCloud one = scan(geo, cfg, {1});
  const PointCloud four = scan(geo, cfg, {4});
  REQUIRE(one.points.size() == four.points.size());
  REQUIRE_FALSE(one.points.empty());
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    CHECK(one.points[i].position == four.points[i].position);
    CHECK(one.points[i].object_id == 4);
    CHECK(one.points[i].true_range <= 10);
  }
  cfg.seed = 10;
  const PointCloud other = scan(geo, cfg, {1});
  CHECK(other.points[0].noisy_range != one.points[0].noisy_range);
}

TEST_CASE("plane residuals follow the noise model") {
  // Plane x = 2, scanner at the origin.
  Scene s;
  s.objects.push_back(test::make_quad_object(1, {2, -3, -3}, {2, 3, -3}, {2, 3, 3}, {2, -3, 3}));
  const SceneGeometry geo = build_scene_geometry(s);
  ScannerConfig cfg = config_with(40, 360);
  cfg.system_error_mm = 2;
  cfg.seed = 4;
  const PointCloud cloud = scan(geo, cfg, {1});
  REQUIRE(cloud.points.size() > 20000);
  double sum = 0, sum2 = 0;
  for (const auto& p : cloud.points) {
    const Vec3 d = normalized(p.position);
    const double r = norm(p.position) - 2.0 / d.x;
    sum += r;
    sum2 += r * r;
  }
  const double n = static_cast<double>(cloud.points.size());
  const double mean = sum / n, sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(sd - 0.002) < 0.002 * 0.03);
  CHECK(std::abs(mean) < 4 * 0.002 / std::sqrt(n));
}

TEST_CASE("scanner config files") {
  const ResolvedConfig r = parse_scanner_config(R"({"preset": "blk360", "distance_error": "10ppm", "origin": [1, 2, 3]})");
  CHECK(r.preset == "blk360");
  CHECK(r.has_origin);
  CHECK(r.config.max_range_m == 45);
  CHECK(r.config.distance_error_fraction == doctest::Approx(1e-5));
  CHECK(r.config.origin == Vec3{1, 2, 3});
  const ResolvedConfig bare = parse_scanner_config(R"({"max_range_m": 12, "distance_error": 0.001})");
  CHECK(bare.preset.empty());
  CHECK_FALSE(bare.has_origin);
  CHECK(bare.config.max_range_m == 12);
  CHECK(throws_code(ErrorCode::ParseError, [] { parse_scanner_config(R"({"colour": 1})"); }));
  CHECK(throws_code(ErrorCode::UnknownPreset, [] { parse_scanner_config(R"({"preset": "x"})"); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { parse_scanner_config(R"({"max_range_m": -1})"); }));
  CHECK(throws_code(ErrorCode::ParseError, [] { parse_scanner_config("{"); }));
  const ResolvedConfig again = parse_scanner_config(serialize_scanner_config(r.config));
  CHECK(serialize_scanner_config(again.config) == serialize_scanner_config(r.config));
}
