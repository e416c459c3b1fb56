// Copyright 2026 The vscan Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "vscan/geometry.hpp"
#include "vscan/scanner.hpp"
#include "vscan/scene_geometry.hpp"

namespace vscan {

// Equirectangular RGB image, row-major, top row first. Column c covers
// azimuth [c, c+1) * 2pi / width; the top row is theta_max.
struct PanoramaImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // width * height * 3
  double theta_min = -std::numbers::pi / 2.0;
  double theta_max = std::numbers::pi / 2.0;
  Vec3 origin;

  Rgb at(int column, int row) const;
  void set(int column, int row, Rgb c);
};

// Lambertian shading: albedo * (ambient + intensity * max(0, n . -light)).
struct ShadingConfig {
  Vec3 light_direction = default_light_direction();
  double light_intensity = 0.7;
  double ambient = 0.3;

  // Straight down, tilted 30 degrees toward +x.
  static Vec3 default_light_direction();
  void validate() const;
};

struct RenderOptions {
  Rgb background{0, 0, 0};
  double theta_min = -std::numbers::pi / 2.0;
  double theta_max = std::numbers::pi / 2.0;
  unsigned threads = 0;
};

// One ray per pixel centre. Width must be even and >= 8; height is
// width / 2 for the full vertical range, otherwise scaled to keep square
// angular pixels.
PanoramaImage render_panorama(const SceneGeometry& scene, const Vec3& origin, const ShadingConfig& shading,
                              int width, const RenderOptions& options = {});

// u = phi / 2pi (wrapped into [0, 1)), v = (theta - theta_min) / (theta_max - theta_min).
// Throws OutOfVerticalRange when theta is outside the bounds by more than 1e-12.
std::pair<double, double> direction_to_uv(double phi, double theta, double theta_min, double theta_max);

// Nearest pixel for (u, v); v = 1 maps to the top row.
std::pair<int, int> uv_to_pixel(double u, double v, int width, int height);

// Colours each point with the panorama pixel at its scan vector's (phi,
// theta). The vertical mapping uses the panorama's own theta bounds.
// Throws MismatchedOrigin when the panorama was captured elsewhere.
PointCloud colour_points(const PointCloud& cloud, const PanoramaImage& pano, unsigned threads = 0);
void colour_points_in_place(PointCloud& cloud, const PanoramaImage& pano, unsigned threads = 0);

}  // namespace vscan
